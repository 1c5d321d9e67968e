#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qchar::toda {

// v in (0, 1); l12 = l1 - l2, l23 = l2 - l3
struct Sample {
  double v = 0.5, l12 = 20.5, l23 = 20.5;
};

struct Rejection {
  Sample sample;
  std::string reason;
};

// v uniform in (0.3, 0.7), l12 and l23 in {20.5, ..., 39.5}; points with a radicand <= 0 on the
// (D+2)-ball are rejected
std::vector<Sample> draw_samples(int count, uint64_t seed, int D, int precision,
                                 std::vector<Rejection>* rejected = nullptr);
// first nonpositive radicand, empty if none
std::string screen_sample(const Sample& s, int D, int precision);

struct NumericResult {
  std::string check;
  int D = 0;
  Sample sample;
  double max_residual = 0;
  bool pass = false;
};

double numeric_tolerance(int precision);

// defining relations, Casimir scalar and modified Serre relations on the D-ball,
// relative residuals
std::vector<NumericResult> verify_gt_representation(int D, const std::vector<Sample>& samples, int precision);

// Flipped: omega carries v^{r}, omega-bar v^{-r+s}; Corrected: v^{-r} and v^{r+s}
enum class WhittakerExponent { Corrected, Flipped };
std::vector<NumericResult> verify_whittaker(int D, const std::vector<Sample>& samples, int precision,
                                            WhittakerExponent e = WhittakerExponent::Corrected);

}  // namespace qchar::toda
