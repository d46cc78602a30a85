#pragma once

// Phase configuration (three sound coefficients separated by two interfaces)
// and the piecewise-constant initial data.

#include <vector>

namespace phasefront {

struct PhaseConfig {
  double a_l = 1.0;
  double a_m = 1.0;
  double a_r = 1.0;
  double x_a = 0.0;
  double x_b = 1.0;

  double eta() const;   // 2(a_m - a_l)/(a_m + a_l)
  double zeta() const;  // 2(a_r - a_m)/(a_r + a_m)
  double sound_at(double x) const;
  double min_sound() const;
};

// Holds from `x` up to the next piece; the first piece extends to -inf.
struct DataPiece {
  double x = 0.0;
  double v = 1.0;
  double u = 0.0;
};

using InitialData = std::vector<DataPiece>;

enum class CaseTag { Bubble, Increasing, Decreasing };

const char* to_string(CaseTag c);

// eta >= 0 >= zeta is a bubble (trivial and one-interface configurations
// included), eta, zeta > 0 increasing, eta, zeta < 0 decreasing. Anything
// else throws OutsideDomain.
CaseTag classify(const PhaseConfig& cfg);

// Mirror x -> -x, u -> -u. Maps a decreasing configuration onto an
// increasing one and back.
PhaseConfig reflect(const PhaseConfig& cfg);
InitialData reflect(const InitialData& data);

// Throws InvalidArgument on non-positive sounds or v, unordered interfaces,
// or non-increasing piece positions.
void validate(const PhaseConfig& cfg);
void validate(const InitialData& data);

}  // namespace phasefront
