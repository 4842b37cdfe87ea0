#include "certiposi/loja.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "certiposi/bernstein.hpp"
#include "certiposi/errors.hpp"
#include "certiposi/parallel.hpp"
#include "certiposi/sampling.hpp"

namespace certiposi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

SemialgSystem scaled(const SemialgSystem& sys) { return sys.scaled ? sys : normalize_system(sys); }

std::vector<NumericPoly> numeric(const std::vector<MonomialPoly>& ps) {
  return std::vector<NumericPoly>(ps.begin(), ps.end());
}

Eigen::MatrixXd gradient_matrix(const std::vector<NumericPoly>& g, std::span<const double> z,
                                const std::vector<int>& I) {
  Eigen::MatrixXd J(static_cast<Eigen::Index>(z.size()), static_cast<Eigen::Index>(I.size()));
  for (std::size_t k = 0; k < I.size(); ++k) J.col(static_cast<Eigen::Index>(k)) = g[static_cast<std::size_t>(I[k])].gradient(z);
  return J;
}

double smallest_singular_value(const Eigen::MatrixXd& J) {
  if (J.cols() == 0) return kInf;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

std::vector<int> active_indices(const std::vector<NumericPoly>& g, std::span<const double> z, double tau) {
  std::vector<int> I;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::fabs(g[i](z)) <= tau) I.push_back(static_cast<int>(i));
  return I;
}

double sigma_at(const std::vector<NumericPoly>& g, std::span<const double> z, const std::vector<int>& I) {
  if (static_cast<int>(I.size()) > static_cast<int>(z.size())) {
    throw NumericError("CQC violated: " + std::to_string(I.size()) + " active constraints in dimension " +
                       std::to_string(z.size()));
  }
  return smallest_singular_value(gradient_matrix(g, z, I));
}

void combinations(int k, int size, int first, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == size) {
    out.push_back(cur);
    return;
  }
  for (int i = first; i < k; ++i) {
    cur.push_back(i);
    combinations(k, size, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<double> axpy(std::span<const double> p, double t, std::span<const double> v) {
  std::vector<double> q(p.begin(), p.end());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] += t * v[i];
  return q;
}

}  // namespace

NumericPoly::NumericPoly(const MonomialPoly& p) : n_(p.dim()), degree_(p.degree()) {
  for (const auto& [alpha, c] : p.terms()) {
    terms_.push_back({std::vector<int>(alpha.entries().begin(), alpha.entries().end()), c.get_d()});
  }
}

double NumericPoly::operator()(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = t.coef;
    for (int j = 0; j < n_; ++j) v *= ipow(x[static_cast<std::size_t>(j)], t.exp[static_cast<std::size_t>(j)]);
    s += v;
  }
  return s;
}

Eigen::VectorXd NumericPoly::gradient(std::span<const double> x) const {
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(n_);
  for (const auto& t : terms_) {
    for (int k = 0; k < n_; ++k) {
      const int ek = t.exp[static_cast<std::size_t>(k)];
      if (ek == 0) continue;
      double v = t.coef * ek;
      for (int j = 0; j < n_; ++j) {
        const int e = t.exp[static_cast<std::size_t>(j)] - (j == k ? 1 : 0);
        v *= ipow(x[static_cast<std::size_t>(j)], e);
      }
      grad(k) += v;
    }
  }
  return grad;
}

Eigen::MatrixXd NumericPoly::hessian(std::span<const double> x) const {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& t : terms_) {
    for (int a = 0; a < n_; ++a) {
      for (int b = a; b < n_; ++b) {
        std::vector<int> e = t.exp;
        double v = t.coef * e[static_cast<std::size_t>(a)];
        e[static_cast<std::size_t>(a)] -= 1;
        v *= e[static_cast<std::size_t>(b)];
        e[static_cast<std::size_t>(b)] -= 1;
        if (v == 0.0) continue;
        for (int j = 0; j < n_; ++j) v *= ipow(x[static_cast<std::size_t>(j)], e[static_cast<std::size_t>(j)]);
        H(a, b) += v;
        if (a != b) H(b, a) += v;
      }
    }
  }
  return H;
}

Projector::Projector(const SemialgSystem& sys, const LojaOptions& opts)
    : n_(sys.dim()), dom_(sys.dom), opts_(opts) {
  g_ = numeric(sys.g);
  all_ = g_;
  for (const auto& gen : dom_.generators()) all_.emplace_back(gen);
  const int k = static_cast<int>(all_.size());
  for (int size = 1; size <= std::min(n_, k); ++size) {
    std::vector<int> cur;
    combinations(k, size, 0, cur, subsets_);
  }

  Rng rng(opts.seed);
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < opts.cloud_points; ++i) pts.push_back(uniform_point(rng, dom_));
  for (auto& p : lattice_points_double(dom_, lattice_resolution(n_, opts.cloud_points / 2))) pts.push_back(std::move(p));
  for (auto& p : pts)
    if (feasible(p)) cloud_.push_back(std::move(p));
  constexpr std::size_t kMaxCloud = 1500;
  if (cloud_.size() > kMaxCloud) {
    std::vector<std::vector<double>> thin;
    const double stride = static_cast<double>(cloud_.size()) / kMaxCloud;
    for (std::size_t i = 0; i < kMaxCloud; ++i) thin.push_back(cloud_[static_cast<std::size_t>(i * stride)]);
    cloud_ = std::move(thin);
  }
}

double Projector::min_g(std::span<const double> x) const {
  double m = kInf;
  for (const auto& g : g_) m = std::min(m, g(x));
  return m;
}

double Projector::G(std::span<const double> x) const { return std::max(0.0, -min_g(x)); }

double Projector::min_constraint(std::span<const double> z) const {
  double m = kInf;
  for (const auto& c : all_) m = std::min(m, c(z));
  return m;
}

bool Projector::feasible(std::span<const double> x, double tol) const { return min_constraint(x) >= -tol; }

std::optional<std::vector<double>> Projector::solve_active(std::span<const double> x, const std::vector<int>& set,
                                                           std::span<const double> start) const {
  const int n = n_;
  const int k = static_cast<int>(set.size());
  Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(start.data(), n);
  const Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
  auto zspan = [&](const Eigen::VectorXd& v) { return std::span<const double>(v.data(), static_cast<std::size_t>(n)); };

  Eigen::MatrixXd J(n, k);
  for (int i = 0; i < k; ++i) J.col(i) = all_[static_cast<std::size_t>(set[static_cast<std::size_t>(i)])].gradient(zspan(z));
  Eigen::VectorXd mu = J.colPivHouseholderQr().solve(z - xv);

  auto residual = [&](const Eigen::VectorXd& zz, const Eigen::VectorXd& mm) {
    Eigen::VectorXd F(n + k);
    Eigen::VectorXd stat = zz - xv;
    for (int i = 0; i < k; ++i) {
      const auto& c = all_[static_cast<std::size_t>(set[static_cast<std::size_t>(i)])];
      stat -= mm(i) * c.gradient(zspan(zz));
      F(n + i) = c(zspan(zz));
    }
    F.head(n) = stat;
    return F;
  };

  Eigen::VectorXd F = residual(z, mu);
  double norm = F.norm();
  for (int it = 0; it < 80 && norm > 1e-14; ++it) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + k, n + k);
    K.topLeftCorner(n, n).setIdentity();
    for (int i = 0; i < k; ++i) {
      const auto& c = all_[static_cast<std::size_t>(set[static_cast<std::size_t>(i)])];
      const Eigen::VectorXd grad = c.gradient(zspan(z));
      if (c.degree() >= 2) K.topLeftCorner(n, n) -= mu(i) * c.hessian(zspan(z));
      K.block(0, n + i, n, 1) = -grad;
      K.block(n + i, 0, 1, n) = grad.transpose();
    }
    const Eigen::VectorXd step = K.fullPivLu().solve(-F);
    if (!step.allFinite()) return std::nullopt;
    double t = 1.0;
    while (true) {
      Eigen::VectorXd z2 = z + t * step.head(n);
      Eigen::VectorXd mu2 = mu + t * step.tail(k);
      Eigen::VectorXd F2 = residual(z2, mu2);
      if (F2.norm() < (1.0 - 1e-4 * t) * norm || t < 1e-6) {
        z = z2;
        mu = mu2;
        F = F2;
        norm = F2.norm();
        break;
      }
      t /= 2;
    }
    if (!z.allFinite()) return std::nullopt;
  }
  if (!(norm <= 1e-11)) return std::nullopt;
  return std::vector<double>(z.data(), z.data() + n);
}

Projection Projector::project(std::span<const double> x) const {
  Projection best;
  if (feasible(x, opts_.feas_tol)) {
    best.z.assign(x.begin(), x.end());
    best.active = active_indices(g_, x, opts_.tau_act);
    return best;
  }
  best.distance = kInf;
  const std::vector<double>* nearest = nullptr;
  for (const auto& c : cloud_) {
    const double d = distance(x, c);
    if (d < best.distance) {
      best.distance = d;
      nearest = &c;
    }
  }
  std::vector<std::vector<double>> starts{std::vector<double>(x.begin(), x.end())};
  if (nearest) {
    best.z = *nearest;
    best.from_cloud = true;
    starts.push_back(*nearest);
    std::vector<double> mid(x.begin(), x.end());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (mid[i] + (*nearest)[i]);
    starts.push_back(std::move(mid));
  }
  for (const auto& set : subsets_) {
    for (const auto& s : starts) {
      auto z = solve_active(x, set, s);
      if (!z || min_constraint(*z) < -opts_.feas_tol) continue;
      const double d = distance(x, *z);
      if (d < best.distance) {
        best.distance = d;
        best.z = std::move(*z);
        best.from_cloud = false;
      }
    }
  }
  if (!std::isfinite(best.distance)) throw NumericError("no feasible point of S found for the projection");
  best.active = active_indices(g_, best.z, opts_.tau_act);
  return best;
}

double eval_F(const MonomialPoly& f, const Rational& fstar, const Rational& normB_f, std::span<const double> x) {
  if (normB_f <= 0) throw InputError("||f||_B must be positive");
  const double v = (mono_eval(f, x) - fstar.get_d()) / normB_f.get_d();
  return std::max(0.0, -v);
}

double eval_G(const SemialgSystem& sys, std::span<const double> x) {
  double m = 0.0;
  for (const auto& g : sys.g) m = std::min(m, mono_eval(g, x));
  return -m;
}

Projection eval_E(const SemialgSystem& sys, std::span<const double> x, const LojaOptions& opts) {
  return Projector(sys, opts).project(x);
}

std::vector<int> active_set(const SemialgSystem& sys, std::span<const double> z, double tau_act) {
  return active_indices(numeric(sys.g), z, tau_act);
}

double jacobian_sigma(const SemialgSystem& sys, std::span<const double> z, const std::vector<int>& I) {
  return sigma_at(numeric(sys.g), z, I);
}

namespace {

struct RayHit {
  std::vector<double> point;
  std::vector<int> active;
  double sigma;
};

class BoundarySearch {
 public:
  BoundarySearch(const Projector& proj, std::vector<double> interior, double tau)
      : proj_(proj), p_(std::move(interior)), tau_(tau), h_(proj.domain().diameter() / 256.0) {}

  std::optional<RayHit> along(std::span<const double> v) const {
    double lo = 0.0;
    double hi = 0.0;
    for (;;) {
      hi = lo + h_;
      const auto q = axpy(p_, hi, v);
      if (proj_.min_g(q) < 0.0) break;
      if (!proj_.domain().contains(std::span<const double>(q))) return std::nullopt;
      lo = hi;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (proj_.min_g(axpy(p_, mid, v)) >= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    RayHit hit{axpy(p_, lo, v), {}, kInf};
    if (!proj_.domain().contains(std::span<const double>(hit.point), 1e-12)) return std::nullopt;
    hit.active = active_indices(proj_.g(), hit.point, tau_);
    if (hit.active.empty()) {
      std::size_t arg = 0;
      for (std::size_t i = 1; i < proj_.g().size(); ++i)
        if (proj_.g()[i](hit.point) < proj_.g()[arg](hit.point)) arg = i;
      hit.active.push_back(static_cast<int>(arg));
    }
    hit.sigma = sigma_at(proj_.g(), hit.point, hit.active);
    return hit;
  }

 private:
  const Projector& proj_;
  std::vector<double> p_;
  double tau_;
  double h_;
};

std::vector<double> interior_point(const Projector& proj) {
  if (proj.cloud().empty()) throw NumericError("no feasible point of S found");
  std::vector<double> x = *std::max_element(proj.cloud().begin(), proj.cloud().end(), [&](const auto& a, const auto& b) {
    return proj.min_g(a) < proj.min_g(b);
  });
  double val = proj.min_g(x);
  for (double step = 0.25; step > 1e-9;) {
    bool moved = false;
    for (int j = 0; j < proj.dim() && !moved; ++j) {
      for (double sgn : {1.0, -1.0}) {
        auto y = x;
        y[static_cast<std::size_t>(j)] += sgn * step;
        if (!proj.domain().contains(std::span<const double>(y))) continue;
        const double v = proj.min_g(y);
        if (v > val) {
          val = v;
          x = std::move(y);
          moved = true;
          break;
        }
      }
    }
    if (!moved) step /= 2;
  }
  if (!(val > 0.0)) throw NumericError("S has no interior point");
  return x;
}

SigmaEstimate estimate_sigma(const Projector& proj, const LojaOptions& opts) {
  SigmaEstimate est;
  const int n = proj.dim();
  if (proj.g().empty()) return est;
  est.interior = interior_point(proj);
  BoundarySearch search(proj, est.interior, opts.tau_act);

  Rng rng(opts.seed ^ 0x5bd1e995ULL);
  std::vector<std::vector<double>> dirs;
  for (int j = 0; j < n; ++j) {
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> e(static_cast<std::size_t>(n), 0.0);
      e[static_cast<std::size_t>(j)] = sgn;
      dirs.push_back(std::move(e));
    }
  }
  for (int i = 0; i < opts.rays_per_dim * n; ++i) dirs.push_back(random_direction(rng, n));

  std::vector<std::optional<RayHit>> hits(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) { hits[i] = search.along(dirs[i]); });
  est.rays = static_cast<int>(dirs.size());
  std::size_t best = dirs.size();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (!hits[i]) {
      ++est.rays_exiting;
      continue;
    }
    est.boundary.push_back(hits[i]->point);
    est.directions.push_back(dirs[i]);
    if (hits[i]->sigma < est.sigma) {
      est.sigma = hits[i]->sigma;
      est.point = hits[i]->point;
      est.active = hits[i]->active;
      best = i;
    }
  }
  if (best == dirs.size() || n < 2) return est;

  // golden-section refinement of the best ray, rotating towards random orthogonal directions
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(dirs[best].data(), n);
  const double width = 4.0 * M_PI / static_cast<double>(dirs.size());
  for (int round = 0; round < n - 1; ++round) {
    const auto r = random_direction(rng, n);
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(r.data(), n);
    w -= w.dot(v) * v;
    if (w.norm() < 1e-12) continue;
    w.normalize();
    auto probe = [&](double t) {
      Eigen::VectorXd d = std::cos(t) * v + std::sin(t) * w;
      std::vector<double> dv(d.data(), d.data() + n);
      const auto hit = search.along(dv);
      if (hit && hit->sigma < est.sigma) {
        est.sigma = hit->sigma;
        est.point = hit->point;
        est.active = hit->active;
      }
      return hit ? hit->sigma : kInf;
    };
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -width, b = width;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = probe(c), fd = probe(d);
    for (int it = 0; it < 50; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = probe(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = probe(d);
      }
    }
    const double t = fc < fd ? c : d;
    v = std::cos(t) * v + std::sin(t) * w;
    v.normalize();
  }
  return est;
}

}  // namespace

SigmaEstimate sigma_J(const SemialgSystem& sys, const LojaOptions& opts) {
  return estimate_sigma(Projector(sys, opts), opts);
}

double hessian_bound_c2(const SemialgSystem& s) {
  const int n = s.dim();
  double c2 = 0.0;
  for (const auto& g : s.g) {
    const int d = g.degree();
    if (d < 2) continue;
    if (d == 2) {
      const std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
      const Eigen::MatrixXd H = NumericPoly(g).hessian(origin);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H, Eigen::EigenvaluesOnly);
      c2 = std::max(c2, eig.eigenvalues().cwiseAbs().maxCoeff());
      continue;
    }
    Eigen::MatrixXd B(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        const auto dab = g.derivative(a).derivative(b);
        const double v = dab.is_zero() ? 0.0 : bnorm(mono_to_bernstein(dab, d - 2, s.dom)).get_d();
        B(a, b) = B(b, a) = v;
      }
    }
    c2 = std::max(c2, B.norm());
  }
  return c2;
}

std::vector<DistanceSample> distance_samples(const Projector& proj, const SigmaEstimate& sigma,
                                             const LojaOptions& opts, const Objective* obj) {
  const auto& dom = proj.domain();
  Rng rng(opts.seed + 1);
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < opts.samples; ++i) pts.push_back(uniform_point(rng, dom));
  const double diam = dom.diameter();
  for (std::size_t b = 0; b < sigma.boundary.size(); ++b) {
    for (double t = 1e-1; t > 5e-7; t /= std::sqrt(10.0)) {
      auto q = axpy(sigma.boundary[b], t * diam, sigma.directions[b]);
      if (dom.contains(std::span<const double>(q))) pts.push_back(std::move(q));
    }
  }
  std::vector<DistanceSample> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    auto& s = out[i];
    s.x = std::move(pts[i]);
    s.G = proj.G(s.x);
    const auto p = proj.project(s.x);
    s.E = p.distance;
    s.active_set_at_projection = p.active;
    if (obj) s.F = eval_F(obj->f, obj->fstar, obj->norm_f, s.x);
  });
  return out;
}

LojaFit empirical_loja_fit(const std::vector<DistanceSample>& samples, LojaPair pair) {
  std::vector<std::pair<double, double>> xg;
  for (const auto& s : samples) {
    if (s.G > 0.0) xg.emplace_back(pair == LojaPair::EG ? s.E : s.F, s.G);
  }
  if (xg.size() < 30) {
    throw InputError("empirical fit needs at least 30 samples with G > 0, got " + std::to_string(xg.size()));
  }
  std::sort(xg.begin(), xg.end());

  std::vector<std::pair<double, double>> tail;
  for (const auto& [x, g] : xg)
    if (x > 0.0) tail.emplace_back(std::log(x), std::log(g));
  tail.resize(tail.size() / 4);
  double slope_g = 0.0;
  if (tail.size() >= 3) {
    double mx = 0.0, my = 0.0;
    for (const auto& [a, b] : tail) {
      mx += a;
      my += b;
    }
    mx /= static_cast<double>(tail.size());
    my /= static_cast<double>(tail.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [a, b] : tail) {
      sxx += (a - mx) * (a - mx);
      sxy += (a - mx) * (b - my);
    }
    if (sxx > 0.0) slope_g = sxy / sxx;
  }

  LojaFit fit;
  fit.samples_used = xg.size();
  for (int k = 0; k <= 28; ++k) {
    fit.L_hat = 1.0 + 0.25 * k;
    fit.tail_slope = tail.size() >= 3 ? fit.L_hat - slope_g : 0.0;
    if (fit.tail_slope >= -0.1) break;
  }
  for (const auto& [x, g] : xg) fit.c_hat = std::max(fit.c_hat, std::pow(x, fit.L_hat) / g);
  return fit;
}

ConditionBound condition_bound(const SemialgSystem& sys, const LojaReport& report) {
  if (!std::isfinite(report.sigma_J) || report.sigma_J <= 0.0 || report.sigma_point.empty()) {
    throw InputError("condition bound needs a report with a finite sigma_J and its point");
  }
  if (!(report.diam_D > 0.0)) throw InputError("condition bound needs diam(D)");
  const auto s = scaled(sys);
  const int n = s.dim();
  ConditionBound cb;
  cb.c1 = std::max(2.0 * std::sqrt(2.0 * n), report.diam_D * std::sqrt(static_cast<double>(s.count())));
  cb.dist_proxy = std::sqrt(2.0) * report.sigma_J;
  cb.first_term = cb.c1 / cb.dist_proxy;
  cb.second_term = report.c2 > 0.0
                       ? 8.0 * report.diam_D * std::sqrt(static_cast<double>(n)) * report.c2 /
                             (cb.dist_proxy * cb.dist_proxy)
                       : 0.0;
  cb.value = std::max(cb.first_term, cb.second_term);

  const auto g = numeric(s.g);
  const auto& z = report.sigma_point;
  auto I = active_indices(g, z, report.tau_act > 0.0 ? report.tau_act : 1e-7);
  if (I.empty() || static_cast<int>(I.size()) > n) return cb;
  const Eigen::MatrixXd J = gradient_matrix(g, z, I);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index last = svd.singularValues().size() - 1;
  const double smin = svd.singularValues()(last);
  const Eigen::MatrixXd P = smin * svd.matrixU().col(last) * svd.matrixV().col(last).transpose();

  EckartYoungWitness w;
  w.z = z;
  w.active = I;
  const Eigen::VectorXd zv = Eigen::Map<const Eigen::VectorXd>(z.data(), n);
  double sq = 0.0;
  for (Eigen::Index k = 0; k < P.cols(); ++k) {
    const Eigen::VectorXd col = P.col(k);
    w.l1.emplace_back(col.data(), col.data() + n);
    w.l0.push_back(-col.dot(zv));
    sq += col.squaredNorm() + w.l0.back() * w.l0.back();
  }
  w.norm = std::sqrt(sq);
  w.sigma_after = smallest_singular_value(J - P);
  cb.witness = std::move(w);
  return cb;
}

LojaReport loja_EG_constant(const SemialgSystem& sys, const LojaOptions& opts, const Objective* obj) {
  const auto s = scaled(sys);
  const int n = s.dim();
  LojaReport rep;
  rep.n = n;
  rep.r = s.count();
  rep.seed = opts.seed;
  rep.tau_act = opts.tau_act;
  rep.feas_tol = opts.feas_tol;
  rep.kkt_tol = opts.kkt_tol;
  rep.diam_D = s.dom.diameter();
  rep.diam_formula = std::sqrt(2.0) * (n + std::sqrt(static_cast<double>(n)));
  rep.c2 = hessian_bound_c2(s);

  Projector proj(s, opts);
  const auto sg = estimate_sigma(proj, opts);
  rep.rays = sg.rays;
  rep.rays_exiting = sg.rays_exiting;
  for (const auto& b : sg.boundary) proj.add_feasible(b);
  rep.notes.push_back("E is a numerical projection estimate; sigma_J and G_star are sampled minima");
  rep.notes.push_back("all norms are Bernstein norms on the simplex D^");

  auto samples = distance_samples(proj, sg, opts, obj);
  rep.samples = samples.size();
  rep.projections = samples.size();

  if (sg.boundary.empty()) {
    rep.degenerate = true;
    rep.notes.push_back("no boundary point of S inside D^: S covers every sampled ray");
    for (const auto& x : samples) rep.sup_E_over_G = std::max(rep.sup_E_over_G, x.G > 0.0 ? x.E / x.G : 0.0);
    return rep;
  }
  rep.sigma_J = sg.sigma;
  rep.sigma_point = sg.point;
  if (!(rep.sigma_J > 1e-14)) throw NumericError("CQC violated: sigma_J vanishes on the boundary of S");

  if (rep.c2 > 0.0) {
    const double R = rep.sigma_J / (2.0 * rep.c2);
    rep.U_radius = R;
    const auto grid = lattice_points_double(s.dom, lattice_resolution(n, opts.grid_points));
    rep.grid_points = grid.size();
    std::vector<double> G(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { G[i] = proj.G(grid[i]); });
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (G[i] > 0.0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return G[a] < G[b]; });

    auto outside_U = [&](std::span<const double> x) {
      for (const auto& b : sg.boundary)
        if (distance(x, b) < R) return false;
      ++rep.projections;
      return proj.project(x).distance >= R;
    };
    for (std::size_t idx : order) {
      if (!outside_U(grid[idx])) continue;
      std::vector<double> x = grid[idx];
      double val = G[idx];
      for (double step = 2.0 * rep.diam_D / lattice_resolution(n, opts.grid_points); step > 1e-13;) {
        bool moved = false;
        for (int j = 0; j < n && !moved; ++j) {
          for (double sgn : {1.0, -1.0}) {
            auto y = x;
            y[static_cast<std::size_t>(j)] += sgn * step;
            if (!s.dom.contains(std::span<const double>(y))) continue;
            const double v = proj.G(y);
            if (v < val && outside_U(y)) {
              val = v;
              x = std::move(y);
              moved = true;
              break;
            }
          }
        }
        if (!moved) step /= 2;
      }
      rep.G_star = val;
      rep.G_star_point = x;
      break;
    }
  }

  rep.c_EG_bound = 2.0 * std::sqrt(static_cast<double>(n)) / rep.sigma_J;
  if (rep.G_star) rep.c_EG_bound = std::max(rep.c_EG_bound, rep.diam_D / *rep.G_star);

  const double near = 2.0 * std::sqrt(static_cast<double>(n)) / rep.sigma_J;
  for (const auto& x : samples) {
    if (x.G > 0.0) rep.sup_E_over_G = std::max(rep.sup_E_over_G, x.E / x.G);
    if ((!rep.U_radius || x.E <= *rep.U_radius) && x.E > near * x.G + 1e-8) ++rep.near_boundary_violations;
  }
  try {
    rep.fit_EG = empirical_loja_fit(samples, LojaPair::EG);
    if (obj) rep.fit_FG = empirical_loja_fit(samples, LojaPair::FG);
  } catch (const InputError& e) {
    rep.notes.push_back(std::string("empirical fit skipped: ") + e.what());
  }
  rep.cond = condition_bound(s, rep);
  rep.notes.push_back("condition bound uses c1 = max(2 sqrt(2n), diam(D) sqrt(r)) with dist(g, Sing) replaced by sqrt(2) sigma_J");
  return rep;
}

bool KKTData::basic_inequality(double tol) const { return distance() <= gamma_minus.norm() / sigma_min + tol; }

bool KKTData::gamma_signs(double tol) const {
  const Eigen::VectorXd w = N_I.ldlt().solve(gamma);
  return gamma_minus.dot(w) >= -tol && gamma_plus.dot(w) <= tol;
}

bool KKTData::small_diff(double tol) const {
  return std::fabs(g_minus.norm() - gamma_minus.norm()) <= c2 * distance() * distance() + tol;
}

KKTData kkt_certificate(const SemialgSystem& s, std::span<const double> y, const LojaOptions& opts) {
  const Projector proj(s, opts);
  if (proj.feasible(y, opts.feas_tol)) throw InputError("kkt_certificate needs a point outside S");
  const auto p = proj.project(y);
  if (p.active.empty()) throw NumericError("no constraint of g is active at the projection");
  const int n = s.dim();

  KKTData k;
  k.y = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  k.z = Eigen::Map<const Eigen::VectorXd>(p.z.data(), n);
  k.I = p.active;
  k.J = gradient_matrix(proj.g(), p.z, k.I);
  k.N_I = k.J.transpose() * k.J;
  const Eigen::VectorXd d = k.y - k.z;
  k.gamma = k.J.transpose() * d;
  k.lambda_vec = -k.N_I.ldlt().solve(k.gamma);
  k.residual = (d + k.J * k.lambda_vec).norm() / std::max(1.0, d.norm());
  if (k.residual > opts.kkt_tol) {
    throw NumericError("KKT residual " + std::to_string(k.residual) + " above tolerance");
  }
  if (k.lambda_vec.minCoeff() < -opts.kkt_tol) throw NumericError("negative KKT multiplier");
  k.sigma_min = smallest_singular_value(k.J);

  const Eigen::Index m = static_cast<Eigen::Index>(k.I.size());
  Eigen::VectorXd gy(m);
  for (Eigen::Index i = 0; i < m; ++i) gy(i) = proj.g()[static_cast<std::size_t>(k.I[static_cast<std::size_t>(i)])](y);
  k.gamma_minus = k.gamma.cwiseMin(0.0);
  k.gamma_plus = k.gamma.cwiseMax(0.0);
  k.g_minus = gy.cwiseMin(0.0);
  k.g_plus = gy.cwiseMax(0.0);
  k.h = gy - k.gamma;
  k.c2 = hessian_bound_c2(s);
  return k;
}

CertLojaResult cert_loja_constant(const SemialgSystem& sys, const std::vector<MonomialPoly>& s_list,
                                  const MonomialPoly& f, const Rational& normB_f, std::size_t grid_points) {
  if (f.dim() != sys.dim()) throw DimensionError("objective and system dimensions differ");
  if (s_list.size() > sys.g.size()) throw InputError("more multipliers than constraints");
  if (normB_f <= 0) throw InputError("||f||_B must be positive");
  std::vector<double> norms;
  std::vector<NumericPoly> mult;
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    norms.push_back(bernstein_norm(sys.g[i], sys.dom).get_d());
    mult.emplace_back(s_list[i]);
  }
  const auto grid = lattice_points_double(sys.dom, lattice_resolution(sys.dim(), grid_points));
  std::vector<double> vals(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    double v = 0.0;
    for (std::size_t i = 0; i < mult.size(); ++i) v += norms[i] * mult[i](grid[k]);
    vals[k] = v;
  });
  CertLojaResult res;
  res.grid_points = grid.size();
  if (!grid.empty()) {
    const auto it = std::max_element(vals.begin(), vals.end());
    res.c = std::max(0.0, *it) / normB_f.get_d();
    res.argmax = grid[static_cast<std::size_t>(it - vals.begin())];
  }
  return res;
}

ExponentBound exponent_formula_bounds(int n, int r, int d) {
  if (n < 1 || r < 1 || d < 1) throw InputError("exponent bound needs n, r, d >= 1");
  return {d * std::pow(6.0 * d - 3.0, n + r),
          "explicit bound d (6d - 3)^(n + r); the d^O(n^2) bound is asymptotic with an unknown constant"};
}

}  // namespace certiposi
