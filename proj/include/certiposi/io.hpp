#pragma once

#include <filesystem>
#include <optional>

#include "certiposi/approx.hpp"
#include "certiposi/bernstein.hpp"
#include "certiposi/certify.hpp"
#include "certiposi/loja.hpp"
#include "certiposi/monomial.hpp"
#include "json.hpp"

namespace certiposi::io {

using nlohmann::json;

// Rationals are written as canonical "p/q" or integer strings. Reading also
// accepts JSON integers. Every parse failure raises InputError.

Rational rational_from_json(const json& j);

/// Term list [{"exp": [...], "coef": "p/q"}, ...].
json to_json(const MonomialPoly& p);
/// n < 0 infers the dimension from the first exponent vector.
MonomialPoly monomial_from_json(const json& j, int n = -1);

/// {"n", "m", "s_hat", "coeffs": [{"alpha", "c"}]} with nonzero coefficients only.
json to_json(const BernsteinPoly& b);
BernsteinPoly bernstein_from_json(const json& j);

/// {"n", "variables", "s_hat", "inequalities": [{"name", "terms"}], "metadata"}.
json to_json(const SemialgSystem& sys);
SemialgSystem system_from_json(const json& j);

/// Objective file: {"n", "terms"} or a bare term list.
MonomialPoly objective_from_json(const json& j, int n);

json to_json(const Certificate& cert);
/// Throws DomainError when the stored s_hat does not define a valid simplex.
Certificate certificate_from_json(const json& j);

/// Parses and verifies a certificate; an invalid s_hat becomes a failed "domain" check.
VerifyReport verify_json(const MonomialPoly& f, const json& cert, const SemialgSystem& sys);

json to_json(const PlateauSpec& spec);
PlateauSpec plateau_from_json(const json& j);

json to_json(const VerifyReport& rep);
json to_json(const DegreeBudget& b);
json to_json(const LojaReport& rep);

json read_file(const std::filesystem::path& path);
/// Writes to a temporary file in the same directory, then renames it into place.
void write_file(const std::filesystem::path& path, const json& j);

}  // namespace certiposi::io
