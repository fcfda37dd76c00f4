#ifndef STALLWATCH_MOTION_HPP
#define STALLWATCH_MOTION_HPP

#include <Eigen/Dense>

#include "stallwatch/geometry.hpp"

namespace stallwatch {

using StateVector = Eigen::Matrix<double, 7, 1>;
using StateCovariance = Eigen::Matrix<double, 7, 7>;
using Measurement = Eigen::Matrix<double, 4, 1>;

// Constant-velocity box state: (cx, cy, area, aspect, v_cx, v_cy, v_area).
// Aspect (w / h) is modelled as constant.
struct MotionState {
  StateVector mean = StateVector::Zero();
  StateCovariance covariance = StateCovariance::Identity();
};

struct MotionNoise {
  double process_scale = 1.0;
  double measurement_scale = 1.0;
};

// Smallest area a predicted state may reach, in px^2.
inline constexpr double kMinStateArea = 1.0;

Measurement box_to_measurement(const Box& b);
Box state_to_box(const MotionState& m);

MotionState initiate_motion(const Box& b);

// One sampled-frame step of the constant-velocity prior.
MotionState predict(const MotionState& m, const MotionNoise& noise = {});

// Linear-Gaussian correction with a box measurement. Throws ConfigError when
// the innovation covariance is singular.
MotionState update(const MotionState& m, const Box& z, const MotionNoise& noise = {});

}  // namespace stallwatch

#endif  // STALLWATCH_MOTION_HPP
