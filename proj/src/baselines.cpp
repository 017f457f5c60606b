// SPDX-License-Identifier: MIT
/**
 * @file baselines.cpp
 * @brief Reference scheme rates and the per-antenna BC capacity solver.
 */
#include "cfdas/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "cfdas/lattice.hpp"
#include "cfdas/quantized.hpp"

namespace cfdas {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kTwoPi = 6.283185307179586;
constexpr double kGolden = 0.6180339887498949;  // (√5−1)/2

/// log₂ det of a Hermitian positive-definite matrix via Cholesky.
double log2det_hpd(const CMat& w) {
  Eigen::LLT<CMat> llt(w);
  if (llt.info() != Eigen::Success)
    throw Error("log2det: matrix not positive definite");
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    s += std::log2(std::real(llt.matrixLLT()(i, i)));
  return 2.0 * s;
}

/// 1 − 2^{−r}, accurate for small r.
double one_minus_pow2neg(double r) { return -std::expm1(-r * kLn2); }

/// 2^{r} − 1, accurate for small r.
double pow2_minus_one(double r) { return std::expm1(r * kLn2); }

/// Golden-section maximization of a unimodal-enough f on [lo, hi]; returns
/// the best (x, f(x)) among all probes, so a non-unimodal f still yields a
/// valid lower estimate of the maximum.
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double lo, double hi, int iters) {
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  double best_x = f1 >= f2 ? x1 : x2;
  double best_f = std::max(f1, f2);
  for (int i = 0; i < iters; ++i) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = f(x2);
    }
    if (f1 > best_f) best_f = f1, best_x = x1;
    if (f2 > best_f) best_f = f2, best_x = x2;
  }
  return {best_x, best_f};
}

/// Adaptive Simpson quadrature with absolute tolerance.
double simpson_step(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

void check_channel(const CMat& h, double snr) {
  if (h.size() == 0) throw ConfigError("channel matrix is empty");
  if (!h.allFinite()) throw Error("channel matrix has non-finite entries");
  if (!(snr >= 0.0) || !std::isfinite(snr))
    throw ConfigError("snr must be a finite nonnegative number");
}

// ---------------------------------------------------------------------------
// Per-antenna broadcast sum capacity: dual minimax solver.
// ---------------------------------------------------------------------------

/// Projection of v onto {x : x ≥ floor, Σ w_ℓ x_ℓ = total} in Euclidean
/// norm (w > 0): x_ℓ = max(floor, v_ℓ − λw_ℓ) with λ found by bisection on
/// the monotone constraint residual.
RVec project_weighted_simplex(const RVec& v, const RVec& w, double total,
                              double floor_val) {
  const auto residual = [&](double lam) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      s += w[i] * std::max(floor_val, v[i] - lam * w[i]);
    return s - total;
  };
  double lo = -1.0, hi = 1.0;
  while (residual(lo) < 0.0) lo *= 2.0;
  while (residual(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  const double lam = 0.5 * (lo + hi);
  RVec x(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    x[i] = std::max(floor_val, v[i] - lam * w[i]);
  return x;
}

struct InnerSolve {
  RVec p;          ///< Maximizing user powers on the simplex.
  double phi;      ///< log₂det(diag q + Σ p_k ĥ_kĥ_kᴴ), bits.
  double gap;      ///< Certified distance to the inner maximum, bits.
  CMat w;          ///< The final matrix diag q + Σ p_k ĥ_kĥ_kᴴ.
};

/// Concave maximization of φ(p) = log₂det(diag q + Σ p_k ĥ_kĥ_kᴴ) over
/// {p ≥ 0, Σp = total}. The Frank–Wolfe certificate
/// total·max_k ∇φ_k − ∇φᵀp bounds φ(p*) − φ(p) but its scale is inflated by
/// `total`, so gradient steps alone stall well above tight tolerances at
/// high power; the workhorse is therefore an equality-constrained Newton
/// step on the support — the Hessian is closed-form,
/// H_jk = −|ĥ_jᴴ W⁻¹ ĥ_k|² / ln2 — with projected gradient ascent kept as
/// the globalizing fallback.
InnerSolve inner_max_power(const CMat& rows, const RVec& q, double total,
                           RVec p, double tol, int max_iter) {
  const Eigen::Index kk = rows.rows();
  const RVec ones = RVec::Ones(kk);
  const auto assemble = [&](const RVec& pw) {
    CMat w = q.cast<cplx>().asDiagonal();
    for (Eigen::Index k = 0; k < kk; ++k)
      w += pw[k] * rows.row(k).adjoint() * rows.row(k);
    return w;
  };
  const auto phi_of = [&](const CMat& w) { return log2det_hpd(w); };

  p = project_weighted_simplex(p, ones, total, 0.0);
  CMat w = assemble(p);
  double phi = phi_of(w);
  double step = 1.0;
  double gap = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    Eigen::LLT<CMat> llt(w);
    const CMat hadj = rows.adjoint();          // column k is ĥ_k
    const CMat solved = llt.solve(hadj);       // W⁻¹ ĥ_k per column
    const CMat gram = hadj.adjoint() * solved; // gram(j,k) = ĥ_jᴴ W⁻¹ ĥ_k
    RVec g(kk);
    for (Eigen::Index k = 0; k < kk; ++k) g[k] = std::real(gram(k, k)) / kLn2;
    gap = total * g.maxCoeff() - g.dot(p);
    if (gap <= tol) break;

    bool moved = false;

    // Newton on the working set: coordinates carrying power, plus any at
    // zero whose gradient beats the multiplier estimate ν = gᵀp/total.
    const double nu = g.dot(p) / total;
    std::vector<Eigen::Index> free;
    for (Eigen::Index k = 0; k < kk; ++k)
      if (p[k] > 1e-12 * total || g[k] > nu) free.push_back(k);
    const Eigen::Index nf = static_cast<Eigen::Index>(free.size());
    if (nf > 1) {
      // Maximize the quadratic model s.t. 1ᵀdp = 0:
      // [(−H)_FF  1; 1ᵀ  0][dp_F; ν] = [g_F; 0]; a small ridge keeps the
      // bordered system nonsingular when users duplicate.
      RMat kkt = RMat::Zero(nf + 1, nf + 1);
      double dmax = 0.0;
      for (Eigen::Index i = 0; i < nf; ++i)
        for (Eigen::Index j = 0; j < nf; ++j) {
          kkt(i, j) = std::norm(gram(free[i], free[j])) / kLn2;
          if (i == j) dmax = std::max(dmax, kkt(i, j));
        }
      const double ridge = 1e-12 * (1.0 + dmax);
      for (Eigen::Index i = 0; i < nf; ++i) {
        kkt(i, i) += ridge;
        kkt(i, nf) = kkt(nf, i) = 1.0;
      }
      RVec rhs = RVec::Zero(nf + 1);
      for (Eigen::Index i = 0; i < nf; ++i) rhs[i] = g[free[i]];
      const RVec sol = Eigen::FullPivLU<RMat>(kkt).solve(rhs);
      if (sol.allFinite()) {
        RVec dp = RVec::Zero(kk);
        for (Eigen::Index i = 0; i < nf; ++i) dp[free[i]] = sol[i];
        // gᵀdp = dpᵀ(−H)dp ≥ 0: the constrained Newton direction is ascent.
        const double slope = g.dot(dp);
        double tmax = 1.0;  // largest feasible step keeping p ≥ 0
        for (Eigen::Index k = 0; k < kk; ++k)
          if (dp[k] < 0.0) tmax = std::min(tmax, p[k] / -dp[k]);
        if (slope > 0.0 && tmax > 0.0) {
          double t = tmax;
          for (int bt = 0; bt < 40 && !moved; ++bt) {
            RVec cand = p + t * dp;
            for (Eigen::Index k = 0; k < kk; ++k)
              cand[k] = std::max(cand[k], 0.0);
            cand *= total / cand.sum();  // repair rounding in the constraint
            const CMat wc = assemble(cand);
            const double phic = phi_of(wc);
            if (phic >= phi + 1e-4 * t * slope) {
              p = cand;
              w = wc;
              phi = phic;
              moved = true;
            }
            t *= 0.5;
          }
        }
      }
    }

    // Globalizing fallback: projected gradient ascent with Armijo.
    for (int bt = 0; bt < 60 && !moved; ++bt) {
      const RVec cand = project_weighted_simplex(p + step * g, ones, total, 0.0);
      const double pred = g.dot(cand - p);
      if (pred <= 0.0) {
        step *= 0.5;
        continue;
      }
      const CMat wc = assemble(cand);
      const double phic = phi_of(wc);
      if (phic >= phi + 1e-4 * pred) {
        p = cand;
        w = wc;
        phi = phic;
        step = std::min(step * 1.3, 1e9);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;  // stalled at numerical resolution
  }
  return {p, phi, gap, w};
}

struct MinimaxSolve {
  double upper;  ///< Certified upper bound on the capacity.
  double lower;  ///< Certified lower bound.
  bool converged;
};

/// One outer evaluation: q from the log parametrization, the inner
/// maximization, the outer value/gradients, and the duality certificate.
struct OuterEval {
  RVec q;
  InnerSolve inner;
  double f = 0.0;         ///< φ(q, p̂) − Σ log₂ q_ℓ.
  RVec grad_q;            ///< ∂f/∂q (Danskin), bits.
  RVec grad_y;            ///< Gradient in the log parametrization.
  double cert_gap = 0.0;  ///< f − min over the simplex of the linearization.
};

MinimaxSolve solve_bc_minimax(const CMat& rows, const RVec& power,
                              const BcCapacityOptions& opt, bool outer_min) {
  const Eigen::Index ll = rows.cols();
  const Eigen::Index kk = rows.rows();
  const double total = power.sum();
  // The certificate's slack scales like the inner argument error, i.e. like
  // √(inner value gap), so the inner tolerance must track the square of the
  // certified gap as the outer loop closes in.
  const auto inner_tol_for = [&](double certified_gap) {
    const double want = 1e-2 * certified_gap * certified_gap;
    return std::clamp(want, 1e-14, std::max(1e-14, 1e-4 * opt.tol));
  };
  double inner_tol = inner_tol_for(std::numeric_limits<double>::infinity());

  RVec p = RVec::Constant(kk, total / static_cast<double>(kk));
  double best_upper = std::numeric_limits<double>::infinity();
  double best_lower = -std::numeric_limits<double>::infinity();

  // q(y)_ℓ = total·e^{y_ℓ} / Σ_k P_k e^{y_k} keeps q > 0 with
  // Σ q_ℓ P_ℓ = total by construction; the −Σlog₂q barrier makes the outer
  // optimum strictly interior, so no inequality constraints remain and the
  // problem is smooth — BFGS applies. y = 0 gives q = 1.
  const auto q_of = [&](const RVec& y) {
    RVec e(ll);
    for (Eigen::Index l = 0; l < ll; ++l)
      e[l] = std::exp(std::clamp(y[l], -60.0, 60.0));
    return RVec(total * e / power.dot(e));
  };

  const auto evaluate = [&](const RVec& y, RVec& p_warm) {
    OuterEval ev;
    ev.q = q_of(y);
    ev.inner = inner_max_power(rows, ev.q, total, p_warm, inner_tol,
                               opt.max_inner);
    p_warm = ev.inner.p;
    double logq = 0.0;
    for (Eigen::Index l = 0; l < ll; ++l) logq += std::log2(ev.q[l]);
    ev.f = ev.inner.phi - logq;

    Eigen::LLT<CMat> llt(ev.inner.w);
    const CMat winv = llt.solve(CMat::Identity(ll, ll));
    ev.grad_q.resize(ll);
    for (Eigen::Index l = 0; l < ll; ++l)
      ev.grad_q[l] = (std::real(winv(l, l)) - 1.0 / ev.q[l]) / kLn2;
    // Chain rule: ∂q_m/∂y_ℓ = δ_{mℓ}q_m − q_m q_ℓ P_ℓ / total.
    const double gq = ev.grad_q.dot(ev.q);
    ev.grad_y.resize(ll);
    for (Eigen::Index l = 0; l < ll; ++l)
      ev.grad_y[l] = ev.grad_q[l] * ev.q[l] - gq * ev.q[l] * power[l] / total;
    // Convexity certificate: the linearization's minimum over the weighted
    // simplex is attained at a vertex (total/P_ℓ)·e_ℓ.
    double lin_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index l = 0; l < ll; ++l)
      lin_min = std::min(lin_min, ev.grad_q[l] * total / power[l]);
    ev.cert_gap = ev.grad_q.dot(ev.q) - lin_min;
    return ev;
  };

  RVec y = RVec::Zero(ll);
  OuterEval ev = evaluate(y, p);
  best_upper = ev.f + ev.inner.gap;
  if (!outer_min) return {best_upper, ev.f, ev.inner.gap <= opt.tol};
  // φ(·, p̂) − Σlog₂ is itself convex with exact gradient grad_q and minorizes
  // the outer objective, so f − cert_gap lower-bounds the minimax value even
  // when the inner maximization is inexact.
  best_lower = ev.f - ev.cert_gap;

  RMat hinv = RMat::Identity(ll, ll);  // BFGS inverse-Hessian estimate
  for (int it = 0; it < opt.max_outer; ++it) {
    best_upper = std::min(best_upper, ev.f + ev.inner.gap);
    best_lower = std::max(best_lower, ev.f - ev.cert_gap);
    if (best_upper - best_lower <= opt.tol) return {best_upper, best_lower, true};
    const double tight = inner_tol_for(best_upper - best_lower);
    if (tight < inner_tol) {
      inner_tol = tight;
      ev = evaluate(y, p);  // refresh value and gradients at the new accuracy
      continue;
    }

    RVec dir = -(hinv * ev.grad_y);
    if (dir.dot(ev.grad_y) >= 0.0) {  // lost positive definiteness: restart
      hinv = RMat::Identity(ll, ll);
      dir = -ev.grad_y;
    }
    double t = 1.0;
    bool moved = false;
    OuterEval ev_next;
    for (int bt = 0; bt < 50; ++bt) {
      RVec p_try = p;
      const RVec y_try = y + t * dir;
      ev_next = evaluate(y_try, p_try);
      if (ev_next.f <= ev.f + 1e-4 * t * dir.dot(ev.grad_y)) {
        const RVec s = t * dir;
        const RVec dg = ev_next.grad_y - ev.grad_y;
        const double sy = s.dot(dg);
        if (sy > 1e-12 * s.norm() * dg.norm()) {  // curvature-safe update
          const RVec hd = hinv * dg;
          const double dgh = dg.dot(hd);
          hinv += ((sy + dgh) / (sy * sy)) * (s * s.transpose()) -
                  (hd * s.transpose() + s * hd.transpose()) / sy;
        }
        y = y_try;
        p = p_try;
        ev = ev_next;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // Progress is limited by inner accuracy: tighten and restart the
      // curvature model; a stall at the floor means numerical resolution.
      if (inner_tol <= 1e-14) break;
      inner_tol = std::max(1e-14, 1e-3 * inner_tol);
      hinv = RMat::Identity(ll, ll);
      ev = evaluate(y, p);
    }
  }
  best_upper = std::min(best_upper, ev.f + ev.inner.gap);
  best_lower = std::max(best_lower, ev.f - ev.cert_gap);
  return {best_upper, best_lower, best_upper - best_lower <= opt.tol};
}

}  // namespace

void validate_wyner(const WynerParams& params) {
  if (!(params.gamma >= 0.0) || params.gamma > 1.0)
    throw ConfigError("wyner: gamma must lie in [0, 1]");
  if (!(params.snr >= 0.0) || !std::isfinite(params.snr))
    throw ConfigError("wyner: snr must be finite and nonnegative");
  if (!(params.r0 >= 0.0) || !std::isfinite(params.r0))
    throw ConfigError("wyner: r0 must be finite and nonnegative");
}

PowerAllocation wyner_effective_channels(double gamma, double beta) {
  if (!(beta >= 0.0) || beta > 1.0)
    throw ConfigError("power allocation: beta must lie in [0, 1]");
  PowerAllocation pa;
  pa.beta = beta;
  pa.h_odd = CVec(3);
  pa.h_even = CVec(3);
  const double lo = std::sqrt(beta), hi = std::sqrt(2.0 - beta);
  pa.h_odd << cplx(gamma * hi, 0.0), cplx(lo, 0.0), cplx(gamma * hi, 0.0);
  pa.h_even << cplx(gamma * lo, 0.0), cplx(hi, 0.0), cplx(gamma * lo, 0.0);
  return pa;
}

double qmf_rate(const CMat& h, double snr, double r0) {
  check_channel(h, snr);
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw ConfigError("qmf: bad r0");
  const int ll = static_cast<int>(h.rows());
  if (ll > 12) {
    std::ostringstream os;
    os << "qmf: " << ll << " relays need 2^" << ll
       << " subsets; the practical limit is 12";
    throw TooManyRelays(os.str());
  }
  if (r0 == 0.0) return 0.0;
  const Eigen::Index kc = h.cols();
  std::vector<CMat> outer(static_cast<size_t>(ll));
  for (int l = 0; l < ll; ++l) {
    const CVec hl = h.row(l).adjoint();
    outer[static_cast<size_t>(l)] = hl * hl.adjoint();
  }
  const auto inner_min = [&](double r) {
    const double c = snr * one_minus_pow2neg(r);
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << ll); ++mask) {  // mask = kept rows Sᶜ
      CMat g = CMat::Identity(kc, kc);
      for (int l = 0; l < ll; ++l)
        if (mask & (1u << l)) g += c * outer[static_cast<size_t>(l)];
      const double drop = static_cast<double>(ll - std::popcount(mask));
      best = std::min(best, drop * (r0 - r) + log2det_hpd(g));
    }
    return best;
  };

  // The objective is concave in r: coarse grid to bracket, then
  // golden-section refinement inside the bracketing cell.
  const int n_grid = 128;
  double best_val = 0.0;  // r = 0 gives exactly 0
  int best_i = 0;
  for (int i = 1; i <= n_grid; ++i) {
    const double v = inner_min(r0 * i / n_grid);
    if (v > best_val) {
      best_val = v;
      best_i = i;
    }
  }
  const double lo = r0 * std::max(0, best_i - 1) / n_grid;
  const double hi = r0 * std::min(n_grid, best_i + 1) / n_grid;
  const auto refined = golden_max(inner_min, lo, hi, 80);
  return std::max(best_val, refined.second);
}

double qmf_wyner_per_user(const WynerParams& params) {
  validate_wyner(params);
  if (params.l > 0)
    throw ConfigError("qmf ring rate: only the infinite model (l <= 0)");
  if (params.r0 == 0.0 || params.snr == 0.0) return 0.0;
  const double gamma = params.gamma, snr = params.snr, r0 = params.r0;
  const auto bigf = [&](double r) {
    const double c = snr * one_minus_pow2neg(r);
    const auto integrand = [&](double theta) {
      const double gain = 1.0 + 2.0 * gamma * std::cos(kTwoPi * theta);
      return std::log2(1.0 + c * gain * gain);
    };
    return integrate(integrand, 0.0, 1.0, 1e-9);
  };
  // G(r) = F(r) − (r0 − r) is strictly increasing with G(0) = −r0 < 0 and
  // G(r0) = F(r0) ≥ 0, so bisection converges to the unique fixed point.
  double lo = 0.0, hi = r0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, r0); ++it) {
    const double mid = 0.5 * (lo + hi);
    (bigf(mid) - (r0 - mid) < 0.0 ? lo : hi) = mid;
  }
  return bigf(0.5 * (lo + hi));
}

double qf_rate(const CMat& h, double snr, double r0) {
  check_channel(h, snr);
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw ConfigError("qf: bad r0");
  if (r0 == 0.0) return 0.0;
  const double denom = pow2_minus_one(r0);
  const Eigen::Index kc = h.cols();
  CMat g = CMat::Identity(kc, kc);
  for (Eigen::Index l = 0; l < h.rows(); ++l) {
    const CVec hl = h.row(l).adjoint();
    const double dl = (1.0 + snr * hl.squaredNorm()) / denom;
    g += (snr / (1.0 + dl)) * hl * hl.adjoint();
  }
  return log2det_hpd(g);
}

double df_wyner_rate(const WynerParams& params) {
  validate_wyner(params);
  const double g2 = params.gamma * params.gamma, snr = params.snr;
  const double r1 = std::log2(1.0 + snr / (1.0 + 2.0 * g2 * snr));
  const double r2 = std::min(0.5 * std::log2(1.0 + 2.0 * g2 * snr),
                             std::log2(1.0 + (1.0 + 2.0 * g2) * snr) / 3.0);
  return std::min(std::max(r1, r2), params.r0);
}

double bc_sum_capacity_per_antenna(const CMat& user_rows,
                                   const RVec& per_antenna_power,
                                   const BcCapacityOptions& opt) {
  check_channel(user_rows, 1.0);
  if (per_antenna_power.size() != user_rows.cols())
    throw ConfigError("bc capacity: one power bound per antenna required");
  if ((per_antenna_power.array() <= 0.0).any())
    throw ConfigError("bc capacity: antenna powers must be positive");
  if (user_rows.norm() == 0.0) return 0.0;
  const MinimaxSolve s = solve_bc_minimax(user_rows, per_antenna_power, opt, true);
  if (!s.converged) {
    std::ostringstream os;
    os << "bc capacity: certificate gap " << (s.upper - s.lower) << " > tol "
       << opt.tol << " after " << opt.max_outer << " iterations";
    throw NonConvergence(os.str(), s.lower, s.upper);
  }
  return s.upper;
}

double mac_sum_capacity_total_power(const CMat& user_rows, double total_power,
                                    const BcCapacityOptions& opt) {
  check_channel(user_rows, 1.0);
  if (!(total_power > 0.0)) throw ConfigError("mac capacity: power must be positive");
  if (user_rows.norm() == 0.0) return 0.0;
  const Eigen::Index ll = user_rows.cols();
  const RVec power = RVec::Constant(ll, total_power / static_cast<double>(ll));
  const MinimaxSolve s = solve_bc_minimax(user_rows, power, opt, false);
  return s.upper;
}

double cdpc_rate(const CMat& hd, double snr, double r0,
                 const BcCapacityOptions& opt) {
  check_channel(hd, snr);
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw ConfigError("cdpc: bad r0");
  if (r0 == 0.0 || snr == 0.0) return 0.0;
  const double scale = pow2_minus_one(r0) / std::pow(2.0, r0);  // (2^r0−1)/2^r0
  const double signal_power = snr * scale;
  const double quant_var = snr * std::pow(2.0, -r0);  // forwarded per antenna
  CMat rows = hd;
  for (Eigen::Index l = 0; l < hd.rows(); ++l) {
    const double sigma2 = 1.0 + hd.row(l).squaredNorm() * quant_var;
    rows.row(l) /= std::sqrt(sigma2);
  }
  const RVec power = RVec::Constant(hd.cols(), signal_power);
  return bc_sum_capacity_per_antenna(rows, power, opt);
}

namespace {

/// Rows of Hd⁻¹ via full-pivot LU; throws Singular.
CMat inverse_or_throw(const CMat& hd) {
  if (hd.rows() != hd.cols())
    throw ConfigError("beamforming needs a square channel matrix");
  Eigen::FullPivLU<CMat> lu(hd);
  if (!lu.isInvertible()) throw Singular("beamforming: channel matrix is singular");
  return lu.inverse();
}

}  // namespace

double czfb_rate(const CMat& hd, double snr, double r0) {
  check_channel(hd, snr);
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw ConfigError("czfb: bad r0");
  const CMat b = inverse_or_throw(hd);
  if (r0 == 0.0) return 0.0;
  const double denom = pow2_minus_one(r0);
  double sum = 0.0;
  for (Eigen::Index l = 0; l < hd.rows(); ++l) {
    // Column ℓ of Hd⁻¹ is the precoding vector that carries user ℓ's stream.
    const double stream_power = b.col(l).squaredNorm();
    const double noise = 1.0 + (1.0 + hd.row(l).squaredNorm() * snr) / denom;
    sum += std::log2(1.0 + (snr / stream_power) / noise);
  }
  return sum;
}

double zfb_rate(const CMat& hd, double snr, ZfbNormalization norm) {
  check_channel(hd, snr);
  const CMat b = inverse_or_throw(hd);
  if (norm == ZfbNormalization::worst_antenna) {
    double max_row = 0.0;
    for (Eigen::Index m = 0; m < b.rows(); ++m)
      max_row = std::max(max_row, b.row(m).squaredNorm());
    return static_cast<double>(b.cols()) * std::log2(1.0 + snr / max_row);
  }
  double sum = 0.0;
  for (Eigen::Index l = 0; l < b.cols(); ++l)
    sum += std::log2(1.0 + snr / b.col(l).squaredNorm());
  return sum;
}

double dpc_sum_capacity(const CMat& hd, double snr,
                        const BcCapacityOptions& opt) {
  check_channel(hd, snr);
  if (snr == 0.0) return 0.0;
  const RVec power = RVec::Constant(hd.cols(), snr);
  return bc_sum_capacity_per_antenna(hd, power, opt);
}

PowerAllocationResult wyner_power_allocation(const WynerParams& params,
                                             WynerScheme scheme,
                                             std::int64_t p) {
  validate_wyner(params);
  QuantGrid grid{};
  if (p > 0) grid = make_quant_grid(p, params.snr);

  // Rate of one receiver for its own best integer coefficients; quantized
  // when a prime is given. A zero effective channel carries rate 0.
  const auto receiver_rate = [&](const CVec& h) {
    if (h.norm() == 0.0) return 0.0;
    const CofSolution sol = find_best_coefficients(h, params.snr);
    if (p <= 0) return sol.rate;
    const double bits = 2.0 * std::log2(static_cast<double>(p));
    return std::max(0.0, bits - noise_entropy(effective_noise_pmf(h, sol.a, grid)));
  };
  const auto objective = [&](double beta) {
    const PowerAllocation pa = wyner_effective_channels(params.gamma, beta);
    const double ro = std::min(params.r0, receiver_rate(pa.h_odd));
    const double re = std::min(params.r0, receiver_rate(pa.h_even));
    return scheme == WynerScheme::cof ? std::min(ro, re) : 0.5 * (ro + re);
  };

  PowerAllocationResult best;
  best.beta = 1.0;
  best.rate = objective(1.0);
  const int n_grid = 200;  // step 0.005
  for (int i = 0; i < n_grid; ++i) {
    const double beta = static_cast<double>(i) / n_grid;
    const double rate = objective(beta);
    if (rate > best.rate) {
      best.beta = beta;
      best.rate = rate;
    }
  }
  const double lo = std::max(0.0, best.beta - 1.0 / n_grid);
  const double hi = std::min(1.0, best.beta + 1.0 / n_grid);
  const auto refined = golden_max(objective, lo, hi, 40);
  if (refined.second > best.rate) {
    best.beta = refined.first;
    best.rate = refined.second;
  }
  return best;
}

}  // namespace cfdas
