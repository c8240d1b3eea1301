#include "steerkit/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "steerkit/error.hpp"

namespace steerkit::sdp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::PrimalInfeasible: return "PrimalInfeasible";
    case Status::DualInfeasible: return "DualInfeasible";
    case Status::IterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

void SdpProblem::validate() const {
  if (num_vars <= 0) throw InvalidArgument("SdpProblem: at least one variable is required");
  if (objective.size() != num_vars) {
    throw InvalidArgument("SdpProblem: objective length differs from num_vars");
  }
  if (!objective.allFinite()) throw InvalidArgument("SdpProblem: non-finite objective");
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto& blk = blocks[j];
    const int d = blk.constant.dim();
    if (d <= 0) throw InvalidArgument("SdpProblem: block " + std::to_string(j) + " is empty");
    for (const auto& [idx, a] : blk.coeffs) {
      if (idx < 0 || idx >= num_vars) {
        throw InvalidArgument("SdpProblem: block " + std::to_string(j) + " references variable " +
                              std::to_string(idx) + " out of range");
      }
      if (a.dim() != d) {
        throw InvalidArgument("SdpProblem: block " + std::to_string(j) +
                              " mixes matrix dimensions");
      }
      if (!a.matrix().allFinite()) throw InvalidArgument("SdpProblem: non-finite coefficient");
    }
  }
  for (const auto& eq : equalities) {
    for (const auto& [idx, v] : eq.coeffs) {
      if (idx < 0 || idx >= num_vars) {
        throw InvalidArgument("SdpProblem: equality references variable out of range");
      }
      if (!std::isfinite(v)) throw InvalidArgument("SdpProblem: non-finite equality coefficient");
    }
    if (!std::isfinite(eq.rhs)) throw InvalidArgument("SdpProblem: non-finite equality rhs");
  }
}

Eigen::MatrixXd embed_hermitian(const HermitianMatrix& h) {
  const auto& m = h.matrix();
  const Eigen::Index d = m.rows();
  Eigen::MatrixXd e(2 * d, 2 * d);
  e.topLeftCorner(d, d) = m.real();
  e.topRightCorner(d, d) = -m.imag();
  e.bottomLeftCorner(d, d) = m.imag();
  e.bottomRightCorner(d, d) = m.real();
  return e;
}

HermitianMatrix lmi_value(const LinearMatrixInequality& lmi, const Eigen::VectorXd& y) {
  ComplexMatrix v = -lmi.constant.matrix();
  for (const auto& [idx, a] : lmi.coeffs) v += y(idx) * a.matrix();
  return HermitianMatrix::symmetrized(v);
}

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Blocks = std::vector<Mat>;

// The interior-point iteration runs in extended precision: the Schur
// complement loses about cond(S) digits near the optimum.
using Real = long double;
using LMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using LVec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using LBlocks = std::vector<LMat>;

bool block_is_real(const LinearMatrixInequality& lmi) {
  if (lmi.constant.matrix().imag().cwiseAbs().maxCoeff() != 0.0) return false;
  for (const auto& [idx, a] : lmi.coeffs) {
    if (a.matrix().imag().cwiseAbs().maxCoeff() != 0.0) return false;
  }
  return true;
}

Mat to_real(const HermitianMatrix& h, bool real) {
  return real ? Mat(h.matrix().real()) : embed_hermitian(h);
}

Mat sym(const Mat& m) { return 0.5 * (m + m.transpose()); }
LMat lsym(const LMat& m) { return (m + m.transpose()) / Real(2); }

template <class M>
typename M::Scalar inner(const std::vector<M>& a, const std::vector<M>& b) {
  typename M::Scalar s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j].cwiseProduct(b[j]).sum();
  return s;
}

template <class M>
typename M::Scalar fro(const std::vector<M>& a) {
  using std::sqrt;
  return sqrt(inner(a, a));
}

// Largest alpha with m + alpha*dm PSD (infinity when unbounded).
template <class M>
typename M::Scalar max_step(const M& m, const M& dm) {
  using S = typename M::Scalar;
  if (m.rows() == 1) {
    return dm(0, 0) < 0 ? -m(0, 0) / dm(0, 0) : std::numeric_limits<S>::infinity();
  }
  Eigen::LLT<M> llt(m);
  if (llt.info() != Eigen::Success) return 0;
  const M l = llt.matrixL();
  M w = l.template triangularView<Eigen::Lower>().solve(dm);
  w = l.template triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
  const M ws = (w + w.transpose()) / S(2);
  Eigen::SelfAdjointEigenSolver<M> es(ws, Eigen::EigenvaluesOnly);
  const S lmin = es.eigenvalues()(0);
  return lmin < 0 ? -1 / lmin : std::numeric_limits<S>::infinity();
}

double min_eig(const Mat& m) {
  if (m.rows() == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Conic pair solved by the homogeneous self-dual iteration:
//   (P) min <C, X>  s.t. <A_k, X> = b_k, X PSD
//   (D) max b^T y   s.t. C - sum_k y_k A_k = S PSD
struct ConicData {
  LBlocks c;
  std::vector<LBlocks> a;  // a[k][j]
  LVec b;
  int m() const { return static_cast<int>(b.size()); }
};

LVec apply_op(const ConicData& d, const LBlocks& x) {
  LVec out(d.m());
  for (int k = 0; k < d.m(); ++k) out(k) = inner(d.a[static_cast<std::size_t>(k)], x);
  return out;
}

LBlocks apply_adj(const ConicData& d, const LVec& y) {
  LBlocks out;
  out.reserve(d.c.size());
  for (const auto& cj : d.c) out.push_back(LMat::Zero(cj.rows(), cj.cols()));
  for (int k = 0; k < d.m(); ++k) {
    if (y(k) == 0.0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += y(k) * d.a[static_cast<std::size_t>(k)][j];
  }
  return out;
}

struct Direction {
  LBlocks dx, ds;
  LVec dy;
  Real dtau = 0.0, dkappa = 0.0;
};

struct HsdResult {
  Status status = Status::IterationLimit;
  LBlocks x, s;
  LVec y;
  Real tau = 1.0, kappa = 1.0;
  int iterations = 0;
  std::vector<IterationRecord> history;
};

class HsdSolver {
 public:
  HsdSolver(const ConicData& data, const SolverOptions& opts, Real objective_offset)
      : d_(data), opts_(opts), offset_(objective_offset) {
    n_total_ = 0;
    for (const auto& cj : d_.c) n_total_ += static_cast<int>(cj.rows());
    norm_b_ = d_.b.norm();
    norm_c_ = fro(d_.c);
    LMat g(d_.m(), d_.m());
    for (int k = 0; k < d_.m(); ++k)
      for (int l = 0; l <= k; ++l) {
        g(k, l) = inner(d_.a[static_cast<std::size_t>(k)], d_.a[static_cast<std::size_t>(l)]);
        g(l, k) = g(k, l);
      }
    gram_.compute(g);
  }

  HsdResult run() {
    HsdResult r;
    for (const auto& cj : d_.c) {
      r.x.push_back(LMat::Identity(cj.rows(), cj.cols()));
      r.s.push_back(LMat::Identity(cj.rows(), cj.cols()));
    }
    r.y = LVec::Zero(d_.m());
    r.tau = 1.0;
    r.kappa = 1.0;

    for (int iter = 0; iter <= opts_.max_iter; ++iter) {
      r.iterations = iter;
      const LVec rp = d_.b * r.tau - apply_op(d_, r.x);
      LBlocks rd = apply_adj(d_, r.y);
      for (std::size_t j = 0; j < rd.size(); ++j) rd[j] = d_.c[j] * r.tau - rd[j] - r.s[j];
      const Real cx = inner(d_.c, r.x);
      const Real by = d_.b.dot(r.y);
      const Real rg = by - cx - r.kappa;
      const Real mu = (inner(r.x, r.s) + r.tau * r.kappa) / (n_total_ + 1);

      // User-facing quantities: the user problem is (D) with objective -b^T y.
      const Real pobj = -by / r.tau + offset_;
      const Real dobj = -cx / r.tau + offset_;
      const Real lmi_res = fro(rd) / r.tau / (1.0 + norm_c_);
      const Real eq_res = rp.norm() / r.tau / (1.0 + norm_b_);
      const auto dd = [](Real v) { return static_cast<double>(v); };
      IterationRecord rec{iter, dd(pobj), dd(dobj), dd(lmi_res), dd(eq_res), dd(mu), dd(r.tau), dd(r.kappa), dd(last_step_)};
      r.history.push_back(rec);

      if (lmi_res <= opts_.feas_tol && eq_res <= opts_.feas_tol &&
          std::abs(pobj - dobj) <= opts_.gap_tol * (1.0 + std::abs(pobj)) && dobj - pobj <= opts_.gap_tol) {
        r.status = Status::Optimal;
        return r;
      }
      if (r.tau < 1e-3 * r.kappa) {
        const Status cert = infeasibility(r);
        if (cert != Status::IterationLimit) {
          r.status = cert;
          return r;
        }
      }
      if (iter == opts_.max_iter) break;

      if (!prepare(r)) break;

      // Predictor.
      LBlocks rc_aff(r.x.size());
      for (std::size_t j = 0; j < r.x.size(); ++j) rc_aff[j] = -r.x[j];
      const Direction aff = direction(r, rp, rd, rg, rc_aff, -r.tau * r.kappa, 1.0);
      const Real a_aff = std::min(Real(1), step_length(r, aff));
      Real mu_aff = r.tau * r.kappa;
      {
        Real xs = 0.0;
        for (std::size_t j = 0; j < r.x.size(); ++j) {
          xs += (r.x[j] + a_aff * aff.dx[j]).cwiseProduct(r.s[j] + a_aff * aff.ds[j]).sum();
        }
        mu_aff = (xs + (r.tau + a_aff * aff.dtau) * (r.kappa + a_aff * aff.dkappa)) /
                 (n_total_ + 1);
      }
      Real sigma = std::pow(std::max(Real(0), mu_aff) / mu, Real(3));
      sigma = std::clamp(sigma, Real(0), Real(1));

      // Corrector.
      LBlocks rc(r.x.size());
      for (std::size_t j = 0; j < r.x.size(); ++j) {
        rc[j] = sigma * mu * sinv_[j] - r.x[j] - lsym(aff.dx[j] * aff.ds[j] * sinv_[j]);
      }
      const Real rk = sigma * mu - r.tau * r.kappa - aff.dtau * aff.dkappa;
      Direction dir = direction(r, rp, rd, rg, rc, rk, 1.0 - sigma);
      Real alpha = std::min(Real(1), kFractionToBoundary * step_length(r, dir));
      if (alpha < kMinUsefulStep) {
        // Blocked near the boundary: take a pure centering step instead.
        for (std::size_t j = 0; j < r.x.size(); ++j) rc[j] = mu * sinv_[j] - r.x[j];
        Direction center = direction(r, rp, rd, rg, rc, mu - r.tau * r.kappa, 0.0);
        const Real a_center = std::min(Real(1), kFractionToBoundary * step_length(r, center));
        if (a_center > alpha) {
          dir = std::move(center);
          alpha = a_center;
        }
      }
      if (!(alpha > 1e-14)) break;
      last_step_ = alpha;

      for (std::size_t j = 0; j < r.x.size(); ++j) {
        r.x[j] = lsym(r.x[j] + alpha * dir.dx[j]);
        r.s[j] = lsym(r.s[j] + alpha * dir.ds[j]);
      }
      r.y += alpha * dir.dy;
      r.tau += alpha * dir.dtau;
      r.kappa += alpha * dir.dkappa;
    }
    r.status = Status::IterationLimit;
    return r;
  }

 private:
  static constexpr Real kFractionToBoundary = 0.98;
  static constexpr Real kMinUsefulStep = 0.1;

  LMat h_op(std::size_t j, const LMat& v, const LMat& x) const { return lsym(x * v * sinv_[j]); }

  // Per-iteration factorization. With z = M^{-1} A(H(C)) and C~ = C - A*(z),
  // the dtau pivot is -(<C~, H(C~)> + b^T M^{-1} b + kappa/tau): a sum of
  // nonnegative terms, free of the cancellation in the plain bordered form.
  bool prepare(const HsdResult& r) {
    const int m = d_.m();
    sinv_.assign(r.s.size(), LMat());
    for (std::size_t j = 0; j < r.s.size(); ++j) {
      Eigen::LLT<LMat> llt(r.s[j]);
      if (llt.info() != Eigen::Success) return false;
      sinv_[j] = lsym(llt.solve(LMat::Identity(r.s[j].rows(), r.s[j].cols())));
    }
    LMat mm = LMat::Zero(m, m);
    for (std::size_t j = 0; j < r.s.size(); ++j) {
      for (int l = 0; l < m; ++l) {
        const LMat& al = d_.a[static_cast<std::size_t>(l)][j];
        if (al.isZero(0.0)) continue;
        const LMat g = r.x[j] * al * sinv_[j];
        for (int k = l; k < m; ++k) {
          const LMat& ak = d_.a[static_cast<std::size_t>(k)][j];
          mm(k, l) += ak.cwiseProduct(g).sum();
        }
      }
    }
    for (int l = 0; l < m; ++l)
      for (int k = l + 1; k < m; ++k) mm(l, k) = mm(k, l);
    schur_ = mm;
    ldlt_.compute(mm);
    if (ldlt_.info() != Eigen::Success) return false;

    LBlocks hc(r.s.size());
    for (std::size_t j = 0; j < r.s.size(); ++j) hc[j] = h_op(j, d_.c[j], r.x[j]);
    z_ = solve_schur(apply_op(d_, hc));
    w_ = solve_schur(d_.b);
    c_proj_ = apply_adj(d_, z_);
    for (std::size_t j = 0; j < c_proj_.size(); ++j) c_proj_[j] = d_.c[j] - c_proj_[j];
    Real cc = 0.0;
    for (std::size_t j = 0; j < c_proj_.size(); ++j) {
      cc += c_proj_[j].cwiseProduct(h_op(j, c_proj_[j], r.x[j])).sum();
    }
    pivot_ = -(std::max(cc, Real(0)) + d_.b.dot(w_) + r.kappa / r.tau);
    return std::isfinite(pivot_) && z_.allFinite() && w_.allFinite();
  }

  LVec solve_schur(const LVec& rhs) const {
    LVec x = ldlt_.solve(rhs);
    x += ldlt_.solve(rhs - schur_ * x);
    return x;
  }

  Direction direction(const HsdResult& r, const LVec& rp, const LBlocks& rd, Real rg,
                      const LBlocks& rc, Real rk, Real eta) const {
    LBlocks t(r.x.size());
    for (std::size_t j = 0; j < r.x.size(); ++j) t[j] = rc[j] - eta * h_op(j, rd[j], r.x[j]);
    const LVec r1 = eta * rp - apply_op(d_, t);
    const LVec u = solve_schur(r1);
    const Real num = eta * rg - eta * z_.dot(rp) - rk / r.tau - inner(c_proj_, t) + d_.b.dot(u);

    Direction dir;
    dir.dtau = num / pivot_;
    dir.dy = u + (z_ + w_) * dir.dtau;
    LBlocks v = apply_adj(d_, dir.dy);
    dir.ds.resize(r.x.size());
    dir.dx.resize(r.x.size());
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      v[j] -= dir.dtau * d_.c[j];
      dir.ds[j] = eta * rd[j] - v[j];
      dir.dx[j] = t[j] + h_op(j, v[j], r.x[j]);
    }
    // Close the linearized primal equations A(dX) - b dtau = eta R_p exactly;
    // H(V) loses digits once S is nearly singular.
    const LVec defect = eta * rp - (apply_op(d_, dir.dx) - d_.b * dir.dtau);
    const LBlocks fix = apply_adj(d_, gram_.solve(defect));
    for (std::size_t j = 0; j < r.x.size(); ++j) dir.dx[j] += fix[j];
    dir.dkappa = (rk - r.kappa * dir.dtau) / r.tau;
    return dir;
  }

  static Real step_length(const HsdResult& r, const Direction& dir) {
    Real a = std::numeric_limits<Real>::infinity();
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      a = std::min(a, max_step(r.x[j], dir.dx[j]));
      a = std::min(a, max_step(r.s[j], dir.ds[j]));
    }
    if (dir.dtau < 0.0) a = std::min(a, -r.tau / dir.dtau);
    if (dir.dkappa < 0.0) a = std::min(a, -r.kappa / dir.dkappa);
    return a;
  }

  Status infeasibility(const HsdResult& r) const {
    constexpr Real kCertTol = 1e-8;
    const Real cx = inner(d_.c, r.x);
    const Real by = d_.b.dot(r.y);
    if (cx < 0.0) {
      // X with A(X) = 0, <C, X> < 0: no S = C - A*(y) is PSD.
      const Real res = apply_op(d_, r.x).norm() / -cx;
      if (res <= kCertTol) return Status::PrimalInfeasible;
    }
    if (by > 0.0) {
      // A*(y) + S = 0, b^T y > 0: unbounded improving ray for the user problem.
      LBlocks ay = apply_adj(d_, r.y);
      for (std::size_t j = 0; j < ay.size(); ++j) ay[j] += r.s[j];
      const Real res = fro(ay) / by;
      if (res <= kCertTol) return Status::DualInfeasible;
    }
    return Status::IterationLimit;
  }

  const ConicData& d_;
  SolverOptions opts_;
  Real offset_;
  int n_total_ = 0;
  Real norm_b_ = 0.0;
  Real norm_c_ = 0.0;
  Real last_step_ = 0.0;
  Eigen::LDLT<LMat> gram_;
  LBlocks sinv_;
  LBlocks c_proj_;
  LVec z_, w_;
  Real pivot_ = -1.0;
  LMat schur_;
  Eigen::LDLT<LMat> ldlt_;
};

struct RealProblem {
  std::vector<bool> real_block;
  Blocks constant;                  // B per block (embedded)
  std::vector<Blocks> coeff;        // coeff[i][j] = A_i in block j (embedded)
};

RealProblem embed_problem(const SdpProblem& p) {
  RealProblem rp;
  const std::size_t nb = p.blocks.size();
  rp.real_block.resize(nb);
  rp.coeff.assign(static_cast<std::size_t>(p.num_vars), Blocks(nb));
  for (std::size_t j = 0; j < nb; ++j) {
    const auto& blk = p.blocks[j];
    const bool real = block_is_real(blk);
    rp.real_block[j] = real;
    rp.constant.push_back(to_real(blk.constant, real));
    const Eigen::Index n = rp.constant.back().rows();
    for (auto& c : rp.coeff) c[j] = Mat::Zero(n, n);
    for (const auto& [idx, a] : blk.coeffs) rp.coeff[static_cast<std::size_t>(idx)][j] += to_real(a, real);
  }
  return rp;
}

double lmi_min_eigenvalue(const RealProblem& rp, const Vec& y) {
  double lmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rp.constant.size(); ++j) {
    Mat v = -rp.constant[j];
    for (std::size_t i = 0; i < rp.coeff.size(); ++i) {
      if (y(static_cast<Eigen::Index>(i)) != 0.0) v += y(static_cast<Eigen::Index>(i)) * rp.coeff[i][j];
    }
    lmin = std::min(lmin, min_eig(v));
  }
  return lmin;
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts) {
  problem.validate();
  const int n = problem.num_vars;
  const RealProblem rp = embed_problem(problem);
  const std::size_t nb = rp.constant.size();
  SdpSolution sol;

  // Eliminate equalities: y = y0 + N z.
  Vec y0 = Vec::Zero(n);
  Mat null_basis = Mat::Identity(n, n);
  if (!problem.equalities.empty()) {
    const auto neq = static_cast<Eigen::Index>(problem.equalities.size());
    Mat e = Mat::Zero(neq, n);
    Vec f(neq);
    for (Eigen::Index r = 0; r < neq; ++r) {
      const auto& eq = problem.equalities[static_cast<std::size_t>(r)];
      for (const auto& [idx, v] : eq.coeffs) e(r, idx) += v;
      f(r) = eq.rhs;
    }
    Eigen::JacobiSVD<Mat> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    svd.setThreshold(smax > 0.0 ? 1e-10 : 1.0);
    const auto rank = svd.rank();
    y0 = svd.solve(f);
    if ((e * y0 - f).norm() > 1e-9 * (1.0 + f.norm())) {
      sol.status = Status::PrimalInfeasible;
      sol.y = y0;
      return sol;
    }
    null_basis = svd.matrixV().rightCols(n - rank);
  }

  // Directions that no LMI sees: either the objective is flat along them
  // (drop them) or the problem is unbounded.
  const Eigen::Index mz = null_basis.cols();
  Mat transform;
  if (mz > 0) {
    Eigen::Index rows = 0;
    for (std::size_t j = 0; j < nb; ++j) rows += rp.constant[j].size();
    Mat g = Mat::Zero(rows, mz);
    for (Eigen::Index k = 0; k < mz; ++k) {
      Eigen::Index off = 0;
      for (std::size_t j = 0; j < nb; ++j) {
        Mat acc = Mat::Zero(rp.constant[j].rows(), rp.constant[j].cols());
        for (int i = 0; i < n; ++i) {
          const double w = null_basis(i, k);
          if (w != 0.0) acc += w * rp.coeff[static_cast<std::size_t>(i)][j];
        }
        g.block(off, k, acc.size(), 1) = acc.reshaped();
        off += acc.size();
      }
    }
    Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullV);
    const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    svd.setThreshold(smax > 0.0 ? 1e-12 : 1.0);
    const auto rank = smax > 0.0 ? svd.rank() : 0;
    const Mat v = svd.matrixV();
    const Vec cz = null_basis.transpose() * problem.objective;
    for (Eigen::Index k = rank; k < mz; ++k) {
      const double slope = cz.dot(v.col(k));
      if (std::abs(slope) > 1e-12 * (1.0 + problem.objective.norm())) {
        sol.status = Status::DualInfeasible;
        sol.ray = null_basis * v.col(k) * (slope > 0.0 ? -1.0 : 1.0);
        sol.y = y0;
        return sol;
      }
    }
    transform = null_basis * v.leftCols(rank);
  } else {
    transform = Mat::Zero(n, 0);
  }
  const Eigen::Index m = transform.cols();

  ConicData data;
  data.b = (-(transform.transpose() * problem.objective)).cast<Real>();
  data.c.resize(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    Mat bj = rp.constant[j];
    for (int i = 0; i < n; ++i) {
      if (y0(i) != 0.0) bj -= y0(i) * rp.coeff[static_cast<std::size_t>(i)][j];
    }
    data.c[j] = (-bj).cast<Real>();
  }
  data.a.assign(static_cast<std::size_t>(m), LBlocks(nb));
  for (Eigen::Index k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < nb; ++j) {
      Mat acc = Mat::Zero(rp.constant[j].rows(), rp.constant[j].cols());
      for (int i = 0; i < n; ++i) {
        const double w = transform(i, k);
        if (w != 0.0) acc += w * rp.coeff[static_cast<std::size_t>(i)][j];
      }
      data.a[static_cast<std::size_t>(k)][j] = (-acc).cast<Real>();
    }
  }
  const double offset = problem.objective.dot(y0);

  if (m == 0 || nb == 0) {
    // Nothing left to optimize: y0 is the only candidate.
    sol.y = y0;
    sol.primal_objective = sol.dual_objective = offset;
    sol.min_slack_eigenvalue = nb ? lmi_min_eigenvalue(rp, y0) : 0.0;
    sol.status = sol.min_slack_eigenvalue >= -opts.feas_tol ? Status::Optimal : Status::PrimalInfeasible;
    return sol;
  }

  HsdSolver solver(data, opts, offset);
  HsdResult r = solver.run();
  sol.status = r.status;
  sol.iterations = r.iterations;
  sol.history = std::move(r.history);
  const auto& last = sol.history.back();

  if (r.status == Status::PrimalInfeasible) {
    for (const auto& xj : r.x) sol.dual_blocks.push_back(xj.cast<double>());
    sol.y = y0;
    return sol;
  }
  if (r.status == Status::DualInfeasible) {
    sol.ray = transform * r.y.cast<double>();
    sol.y = y0;
    return sol;
  }
  sol.y = y0 + transform * (r.y / r.tau).cast<double>();
  sol.primal_objective = problem.objective.dot(sol.y);
  sol.dual_objective = last.dual_objective;
  sol.gap = sol.primal_objective - sol.dual_objective;
  sol.primal_residual = last.primal_residual;
  sol.dual_residual = last.dual_residual;
  sol.min_slack_eigenvalue = lmi_min_eigenvalue(rp, sol.y);
  sol.dual_blocks.reserve(nb);
  for (const auto& xj : r.x) sol.dual_blocks.push_back((xj / r.tau).cast<double>());
  return sol;
}

void write_sdpa(const SdpProblem& problem, std::ostream& out) {
  problem.validate();
  const RealProblem rp = embed_problem(problem);
  out << "# minimize c^T y  s.t.  sum_i y_i A_i - A_0 PSD (embedded real blocks)\n";
  out << problem.num_vars << " = num_vars\n";
  out << rp.constant.size() << " = num_blocks\n";
  for (std::size_t j = 0; j < rp.constant.size(); ++j) {
    out << rp.constant[j].rows() << (j + 1 < rp.constant.size() ? " " : "\n");
  }
  for (int i = 0; i < problem.num_vars; ++i) {
    out << problem.objective(i) << (i + 1 < problem.num_vars ? " " : "\n");
  }
  auto dump = [&](int var, std::size_t blk, const Mat& a) {
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = r; c < a.cols(); ++c)
        if (a(r, c) != 0.0) {
          out << var << ' ' << blk + 1 << ' ' << r + 1 << ' ' << c + 1 << ' ' << a(r, c) << '\n';
        }
  };
  for (std::size_t j = 0; j < rp.constant.size(); ++j) dump(0, j, rp.constant[j]);
  for (int i = 0; i < problem.num_vars; ++i)
    for (std::size_t j = 0; j < rp.constant.size(); ++j) dump(i + 1, j, rp.coeff[static_cast<std::size_t>(i)][j]);
  for (const auto& eq : problem.equalities) {
    out << "eq";
    for (const auto& [idx, v] : eq.coeffs) out << ' ' << idx + 1 << ':' << v;
    out << " = " << eq.rhs << '\n';
  }
}

}  // namespace steerkit::sdp
