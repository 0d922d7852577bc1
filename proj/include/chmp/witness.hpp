#ifndef CHMP_WITNESS_HPP
#define CHMP_WITNESS_HPP

#include <optional>
#include <utility>

#include "chmp/iterate.hpp"
#include "chmp/pivots.hpp"

namespace chmp {

/// A point p' of conv(A) strictly closer than p to every column, proving
/// p is outside conv(A). The bisecting hyperplane normal'y = offset separates
/// p from all columns.
struct WitnessCertificate {
  Iterate witness;
  Vector normal;          ///< p - p'
  double offset = 0.0;    ///< (p - p')'(p' + p) / 2
  double distance = 0.0;  ///< |p' - p|
  /// Smallest d(v_i,p)^2 - d(v_i,p')^2 over all columns at verification.
  double slack = 0.0;
  bool verified = false;
};

inline WitnessCertificate make_certificate(Iterate witness, const QueryContext& q) {
  WitnessCertificate cert;
  const Vector& pw = witness.point();
  cert.normal = q.p - pw;
  cert.offset = 0.5 * cert.normal.dot(pw + q.p);
  cert.distance = cert.normal.norm();
  cert.witness = std::move(witness);
  return cert;
}

/// Recheck the n strict inequalities d(v_i, p) > d(v_i, p') directly and
/// record the outcome on the certificate.
inline bool verify_certificate(const PointSet& points, const QueryContext& q,
                               WitnessCertificate& cert,
                               const Tolerances& tol = {}) {
  const Vector& pw = cert.witness.point();
  const Matrix& a = points.matrix();
  const Vector to_p = (a.colwise() - q.p).colwise().squaredNorm().transpose();
  const Vector to_w = (a.colwise() - pw).colwise().squaredNorm().transpose();
  cert.slack = (to_p - to_w).minCoeff();
  const double margin = 2.0 * tol.witness(pw.squaredNorm(), q.pnorm2);
  cert.verified = cert.distance > 0.0 && cert.slack > margin;
  return cert.verified;
}

/// Certificate iff no column is a pivot at the iterate, i.e.
/// min_i v_i'(p_k - p) - (|p_k|^2 - |p|^2)/2 > tau_w, and the result passes
/// direct verification.
inline std::optional<WitnessCertificate> witness_check(const PointSet& points,
                                                       const PivotScan& scan,
                                                       const Iterate& it,
                                                       const QueryContext& q,
                                                       const Tolerances& tol = {}) {
  const double tau = tol.witness(it.point().squaredNorm(), q.pnorm2);
  if (!(scan.witness_margin() > tau)) return std::nullopt;
  WitnessCertificate cert = make_certificate(it, q);
  if (!verify_certificate(points, q, cert, tol)) return std::nullopt;
  return cert;
}

inline std::optional<WitnessCertificate> witness_check(const PointSet& points,
                                                       const Iterate& it,
                                                       const QueryContext& q,
                                                       const Tolerances& tol = {}) {
  return witness_check(points, scan_pivots(points, q, it.point()), it, q, tol);
}

struct Hyperplane {
  Vector normal;
  double offset = 0.0;
};

/// The bisecting hyperplane of [p, p']. Requires a verified certificate.
inline Hyperplane separating_hyperplane(const WitnessCertificate& cert) {
  if (!cert.verified) {
    throw ContractError("separating_hyperplane needs a verified certificate");
  }
  return {cert.normal, cert.offset};
}

}  // namespace chmp

#endif  // CHMP_WITNESS_HPP
