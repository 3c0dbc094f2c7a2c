#include "refgp/posterior.hpp"

#include <cmath>

#include "refgp/errors.hpp"
#include "refgp/kernel.hpp"

namespace refgp {

namespace {

using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

// tr(A B) without forming the product.
double trace_prod(const MatrixXd& a, const MatrixXd& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

struct Factorization {
  MatrixXd K, K1, K2, K3;
  MatrixXd Gi;            // G^{-1}
  MatrixXd Ai;            // A^{-1} (p x p)
  MatrixXd GiX;           // G^{-1} X
  MatrixXd H;             // G^{-1} X A^{-1} X' G^{-1}
  MatrixXd R;             // G^{-1} - H
  double S2 = 0.0;
  double logdetG = 0.0;
  double logdetA = 0.0;
};

Factorization factorize(const MatrixXd& D, const MatrixXd& X,
                        const VectorXd& y, double gamma, double ell,
                        double eta, bool third) {
  const int n = static_cast<int>(y.size());
  const int p = static_cast<int>(X.cols());
  Factorization f;
  KernelMatrices km = kernel_matrices(D, ell, gamma, third);
  f.K = std::move(km.K);
  f.K1 = std::move(km.K1);
  f.K2 = std::move(km.K2);
  if (third) f.K3 = std::move(km.K3);

  MatrixXd G = f.K;
  G.diagonal().array() += eta;
  Eigen::LLT<MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) {
    throw numeric_error("covariance matrix is not positive definite");
  }
  // Downstream quantities involve G^{-1} and products of G^{-1}; once the
  // condition number exceeds ~1/sqrt(eps) squared those lose all accuracy in
  // double precision, so refuse to evaluate rather than return garbage.
  {
    const auto diagL = llt.matrixLLT().diagonal();
    const double dmin = diagL.minCoeff();
    const double dmax = diagL.maxCoeff();
    constexpr double kMaxConditionEstimate = 1e12;
    if (!(dmin > 0.0) ||
        (dmax / dmin) * (dmax / dmin) > kMaxConditionEstimate) {
      throw numeric_error("covariance matrix is numerically singular");
    }
  }
  f.logdetG = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  f.Gi = llt.solve(MatrixXd::Identity(n, n));

  if (p > 0) {
    f.GiX = f.Gi * X;
    const MatrixXd A = X.transpose() * f.GiX;
    Eigen::LLT<MatrixXd> alt(A);
    if (alt.info() != Eigen::Success) {
      throw numeric_error("X'G^{-1}X is not positive definite (rank-deficient design?)");
    }
    f.logdetA = 2.0 * alt.matrixLLT().diagonal().array().log().sum();
    f.Ai = alt.solve(MatrixXd::Identity(p, p));
    f.H = f.GiX * f.Ai * f.GiX.transpose();
    f.R = f.Gi - f.H;
  } else {
    f.Ai.resize(0, 0);
    f.H = MatrixXd::Zero(n, n);
    f.R = f.Gi;
  }
  f.S2 = y.dot(f.R * y);
  if (!(f.S2 > 0.0)) {
    throw numeric_error("generalized residual sum of squares is not positive");
  }
  return f;
}

Matrix3d fisher_matrix(const Factorization& f, const MatrixXd& T5,
                       const MatrixXd& R2, int n, int p) {
  Matrix3d s;
  s(0, 0) = trace_prod(T5, T5);
  s(0, 1) = s(1, 0) = trace_prod(R2, f.K1);
  s(0, 2) = s(2, 0) = T5.trace();
  s(1, 1) = R2.trace();
  s(1, 2) = s(2, 1) = f.R.trace();
  s(2, 2) = static_cast<double>(n - p);
  return s;
}

double log_det_fisher(const Matrix3d& sig) {
  const double det = sig.determinant();
  if (!(det > 0.0)) {
    throw numeric_error("reference-prior information matrix is not positive definite");
  }
  return std::log(det);
}

}  // namespace

struct Posterior::Terms {
  double c_logG;
  double c_logA;
  double c_logS2;
  double c_logSig;
  bool jacobian;  // include the -u1 - u2 reparameterization term
};

Posterior::Posterior(const Dataset& data, double gamma)
    : data_(data), gamma_(gamma) {
  check_gamma(gamma);
  data_.validate();
  D_ = pairwise_distances(data_.locations);
  n_ = data_.n();
  p_ = data_.p();
}

double Posterior::value_impl(const Vector2d& u, const Terms& t) const {
  const double ell = std::exp(u[0]);
  const double eta = std::exp(u[1]);
  const bool need_sigma = t.c_logSig != 0.0;
  const Factorization f =
      factorize(D_, data_.X, data_.y, gamma_, ell, eta, false);
  double val = t.c_logG * f.logdetG + t.c_logA * f.logdetA +
               t.c_logS2 * std::log(f.S2);
  if (need_sigma) {
    const MatrixXd T5 = f.R * f.K1;
    const MatrixXd R2 = f.R * f.R;
    val += t.c_logSig * log_det_fisher(fisher_matrix(f, T5, R2, n_, p_));
  }
  if (t.jacobian) val -= u[0] + u[1];
  return val;
}

void Posterior::full_impl(const Vector2d& u, const Terms& t, double& fval,
                          Vector2d& grad, Matrix2d& hess) const {
  const double ell = std::exp(u[0]);
  const double eta = std::exp(u[1]);
  const bool need_sigma = t.c_logSig != 0.0;
  const int n = n_;
  const MatrixXd& X = data_.X;
  const VectorXd& y = data_.y;
  const Factorization f =
      factorize(D_, X, y, gamma_, ell, eta, need_sigma);

  const MatrixXd T5 = f.R * f.K1;
  const MatrixXd R2 = f.R * f.R;
  Matrix3d Sig = Matrix3d::Zero();
  Matrix3d Sigi = Matrix3d::Zero();
  double logdetSig = 0.0;
  if (need_sigma) {
    Sig = fisher_matrix(f, T5, R2, n_, p_);
    logdetSig = log_det_fisher(Sig);
    Sigi = Sig.inverse();
  }

  double val = t.c_logG * f.logdetG + t.c_logA * f.logdetA +
               t.c_logS2 * std::log(f.S2) + t.c_logSig * logdetSig;

  const MatrixXd Z = MatrixXd::Zero(n, n);
  const MatrixXd I = MatrixXd::Identity(n, n);
  // Derivatives of G and of K1 in phi = (ell, eta); only the ell-ell block of
  // the second derivatives is nonzero.
  const MatrixXd* Gd[2] = {&f.K1, &I};
  auto Gdd = [&](int s, int tt) -> const MatrixXd& {
    return (s == 0 && tt == 0) ? f.K2 : Z;
  };
  const MatrixXd* K1d[2] = {&f.K2, &Z};
  auto K1dd = [&](int s, int tt) -> const MatrixXd& {
    return (s == 0 && tt == 0) ? f.K3 : Z;
  };

  const MatrixXd GmH = f.Gi - 0.5 * f.H;

  MatrixXd dGi[2], dH[2], dR[2], dT5[2], dR2[2];
  MatrixXd dA[2];
  Matrix3d dSig[2];
  double dS2[2];
  for (int s = 0; s < 2; ++s) {
    dGi[s] = -f.Gi * (*Gd[s]) * f.Gi;
    if (p_ > 0) dA[s] = X.transpose() * dGi[s] * X;
    dH[s] = -GmH * (*Gd[s]) * f.H - f.H * (*Gd[s]) * GmH;
    dR[s] = dGi[s] - dH[s];
    dS2[s] = y.dot(dR[s] * y);
    if (need_sigma) {
      dT5[s] = dR[s] * f.K1 + f.R * (*K1d[s]);
      dR2[s] = dR[s] * f.R + f.R * dR[s];
      Matrix3d ds;
      ds(0, 0) = 2.0 * trace_prod(T5, dT5[s]);
      ds(0, 1) = ds(1, 0) = trace_prod(dR2[s], f.K1) + trace_prod(R2, *K1d[s]);
      ds(0, 2) = ds(2, 0) = dT5[s].trace();
      ds(1, 1) = dR2[s].trace();
      ds(1, 2) = ds(2, 1) = dR[s].trace();
      ds(2, 2) = 0.0;
      dSig[s] = ds;
    }
  }

  Vector2d grad_phi;
  for (int s = 0; s < 2; ++s) {
    double g = t.c_logG * trace_prod(f.Gi, *Gd[s]) +
               t.c_logS2 * dS2[s] / f.S2;
    if (p_ > 0 && t.c_logA != 0.0) {
      g += t.c_logA * trace_prod(f.Ai, dA[s]);
    }
    if (need_sigma) {
      g += t.c_logSig * (Sigi * dSig[s]).trace();
    }
    grad_phi[s] = g;
  }

  Matrix2d hess_phi;
  for (int s = 0; s < 2; ++s) {
    for (int tt = s; tt < 2; ++tt) {
      const MatrixXd GiGds = f.Gi * (*Gd[s]);
      const MatrixXd GiGdt = f.Gi * (*Gd[tt]);
      double h = t.c_logG * (-trace_prod(GiGds, GiGdt) +
                             trace_prod(f.Gi, Gdd(s, tt)));

      const MatrixXd ddGi = GiGds * GiGdt * f.Gi + GiGdt * GiGds * f.Gi -
                            f.Gi * Gdd(s, tt) * f.Gi;
      const MatrixXd D2H1 = -(dGi[s] - 0.5 * dH[s]) * (*Gd[tt]) * f.H -
                            f.H * (*Gd[tt]) * (dGi[s] - 0.5 * dH[s]);
      const MatrixXd D2H2 = -GmH * (*Gd[tt]) * dH[s] - dH[s] * (*Gd[tt]) * GmH;
      const MatrixXd D2H3 = -GmH * Gdd(s, tt) * f.H - f.H * Gdd(s, tt) * GmH;
      const MatrixXd ddH = D2H1 + D2H2 + D2H3;
      const MatrixXd ddR = ddGi - ddH;
      const double ddS2 = y.dot(ddR * y);

      if (p_ > 0 && t.c_logA != 0.0) {
        const MatrixXd ddA = X.transpose() * ddGi * X;
        h += t.c_logA * (-(f.Ai * dA[s] * f.Ai * dA[tt]).trace() +
                         (f.Ai * ddA).trace());
      }
      h += t.c_logS2 *
           (-dS2[s] * dS2[tt] / (f.S2 * f.S2) + ddS2 / f.S2);

      if (need_sigma) {
        const MatrixXd ddT5 = ddR * f.K1 + dR[s] * (*K1d[tt]) +
                              dR[tt] * (*K1d[s]) + f.R * K1dd(s, tt);
        const MatrixXd ddR2 = ddR * f.R + f.R * ddR + dR[s] * dR[tt] +
                              dR[tt] * dR[s];
        Matrix3d dds;
        dds(0, 0) = 2.0 * (trace_prod(dT5[s], dT5[tt]) + trace_prod(T5, ddT5));
        dds(0, 1) = dds(1, 0) =
            trace_prod(ddR2, f.K1) + trace_prod(dR2[s], *K1d[tt]) +
            trace_prod(dR2[tt], *K1d[s]) + trace_prod(R2, K1dd(s, tt));
        dds(0, 2) = dds(2, 0) = ddT5.trace();
        dds(1, 1) = ddR2.trace();
        dds(1, 2) = dds(2, 1) = ddR.trace();
        dds(2, 2) = 0.0;
        h += t.c_logSig * (-(Sigi * dSig[s] * Sigi * dSig[tt]).trace() +
                           (Sigi * dds).trace());
      }
      hess_phi(s, tt) = h;
      hess_phi(tt, s) = h;
    }
  }

  // Chain rule to u = (log ell, log eta).
  const Vector2d phi(ell, eta);
  fval = val;
  grad = grad_phi.cwiseProduct(phi);
  hess = hess_phi.cwiseProduct(phi * phi.transpose()) +
         Matrix2d(grad.asDiagonal());
  if (t.jacobian) {
    fval -= u[0] + u[1];
    grad.array() -= 1.0;
  }
}

double Posterior::value(const Vector2d& u) const {
  const Terms t{0.5, 0.5, 0.5 * (n_ - p_), -0.5, true};
  return value_impl(u, t);
}

void Posterior::value_grad_hess(const Vector2d& u, double& f, Vector2d& grad,
                                Matrix2d& hess) const {
  const Terms t{0.5, 0.5, 0.5 * (n_ - p_), -0.5, true};
  full_impl(u, t, f, grad, hess);
}

double Posterior::ml_value(const Vector2d& u) const {
  const Terms t{0.5, 0.0, 0.5 * n_, 0.0, false};
  return value_impl(u, t);
}

void Posterior::ml_value_grad_hess(const Vector2d& u, double& f,
                                   Vector2d& grad, Matrix2d& hess) const {
  const Terms t{0.5, 0.0, 0.5 * n_, 0.0, false};
  full_impl(u, t, f, grad, hess);
}

GlsStats Posterior::gls(const Vector2d& u) const {
  const double ell = std::exp(u[0]);
  const double eta = std::exp(u[1]);
  const Factorization f =
      factorize(D_, data_.X, data_.y, gamma_, ell, eta, false);
  GlsStats out;
  out.S2 = f.S2;
  out.A_inv = f.Ai;
  if (p_ > 0) {
    out.beta = f.Ai * (f.GiX.transpose() * data_.y);
  } else {
    out.beta.resize(0);
  }
  return out;
}

}  // namespace refgp
