#include "stallwatch/motion.hpp"

#include <algorithm>
#include <cmath>

#include "stallwatch/errors.hpp"

namespace stallwatch {
namespace {

using ObservationMatrix = Eigen::Matrix<double, 4, 7>;

const StateCovariance& transition() {
  static const StateCovariance f = [] {
    StateCovariance m = StateCovariance::Identity();
    m(0, 4) = 1.0;
    m(1, 5) = 1.0;
    m(2, 6) = 1.0;
    return m;
  }();
  return f;
}

const ObservationMatrix& observation() {
  static const ObservationMatrix h = [] {
    ObservationMatrix m = ObservationMatrix::Zero();
    m.leftCols<4>().setIdentity();
    return m;
  }();
  return h;
}

// SORT's noise layout: position uncertainty small, area/aspect measured
// coarsely, velocities nearly constant.
StateCovariance process_noise(double scale) {
  StateVector d;
  d << 1.0, 1.0, 1.0, 1.0, 0.01, 0.01, 0.0001;
  return (scale * d).asDiagonal();
}

Eigen::Matrix4d measurement_noise(double scale) {
  Eigen::Vector4d d(1.0, 1.0, 10.0, 10.0);
  return (scale * d).asDiagonal();
}

void enforce_valid_shape(StateVector& mean) {
  if (mean(2) <= 0.0) {
    mean(2) = kMinStateArea;
    mean(6) = 0.0;
  }
  if (mean(3) <= 0.0) mean(3) = 1e-6;
}

}  // namespace

Measurement box_to_measurement(const Box& b) {
  const Point c = b.center();
  return Measurement(c.x, c.y, b.w * b.h, b.w / b.h);
}

Box state_to_box(const MotionState& m) {
  const double area = std::max(m.mean(2), kMinStateArea);
  const double aspect = std::max(m.mean(3), 1e-6);
  const double w = std::sqrt(area * aspect);
  const double h = area / w;
  return {m.mean(0) - 0.5 * w, m.mean(1) - 0.5 * h, w, h};
}

MotionState initiate_motion(const Box& b) {
  MotionState m;
  m.mean.head<4>() = box_to_measurement(b);
  m.mean.tail<3>().setZero();
  StateVector d;
  d << 10.0, 10.0, 10.0, 10.0, 10000.0, 10000.0, 10000.0;
  m.covariance = d.asDiagonal();
  return m;
}

MotionState predict(const MotionState& m, const MotionNoise& noise) {
  const StateCovariance& f = transition();
  MotionState out;
  out.mean = f * m.mean;
  enforce_valid_shape(out.mean);
  out.covariance = f * m.covariance * f.transpose() + process_noise(noise.process_scale);
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  return out;
}

MotionState update(const MotionState& m, const Box& z, const MotionNoise& noise) {
  const ObservationMatrix& h = observation();
  const Eigen::Matrix4d r = measurement_noise(noise.measurement_scale);
  const Eigen::Matrix4d s = h * m.covariance * h.transpose() + r;

  Eigen::LDLT<Eigen::Matrix4d> ldlt(s);
  const Eigen::Matrix<double, 7, 4> pht = m.covariance * h.transpose();
  const Eigen::Matrix<double, 7, 4> gain = ldlt.solve(pht.transpose()).transpose();
  if (ldlt.info() != Eigen::Success || !gain.allFinite() ||
      ldlt.vectorD().minCoeff() <= 0.0) {
    throw ConfigError("singular innovation covariance in motion update");
  }

  MotionState out;
  out.mean = m.mean + gain * (box_to_measurement(z) - h * m.mean);
  enforce_valid_shape(out.mean);
  // Joseph form keeps the posterior symmetric PSD.
  const StateCovariance i_kh = StateCovariance::Identity() - gain * h;
  out.covariance = i_kh * m.covariance * i_kh.transpose() + gain * r * gain.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  return out;
}

}  // namespace stallwatch
