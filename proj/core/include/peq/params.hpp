#pragma once

namespace peq {

// Physical and model constants of the channel problem. Reynolds-type numbers
// are inverse diffusivities: L1 = -(1/re1) lap_h - (1/re2) d_zz, likewise L2
// with rt1, rt2.
struct PhysParams {
  double re1 = 1.0;
  double re2 = 1.0;
  double rt1 = 1.0;
  double rt2 = 1.0;
  double ro = 1.0;
  double f0 = 1.0;
  double beta = 0.0;
  double alpha = 1.0;  // surface heat-exchange coefficient
  double h = 1.0;      // depth
  double l = 1.0;      // channel width
  double lx = 4.0;     // truncation half-length in x

  // Throws ConfigError naming the first offending field.
  void validate() const;
};

}  // namespace peq
