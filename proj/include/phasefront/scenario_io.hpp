#pragma once

// Plain-text scenario files: `key = value` lines under [phase], [data] and
// [run] sections, `#` comments.
//
//   [phase]
//   a_l = 1          # or lambda_l/m/r with a_table = lam:a, lam:a, ...
//   a_m = 1.5
//   a_r = 0.8
//   x_a = -1
//   x_b = 1
//   [data]
//   piece = -2 1.0 0.0   # x v u, holds until the next piece
//   piece = 0 1.2 -0.1
//   [run]
//   nu = 8
//   T = 2
//   sigma0 = 0.1
//   seed = 0
//   snapshots = 0.5, 1

#include <string>

#include "phasefront/tracking.hpp"

namespace phasefront {

// Throws Error(Parse) with the offending line number.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Sound coefficients are written resolved; numbers use %.17g so parsing the
// output gives back the identical scenario.
std::string serialize_scenario(const Scenario& sc);

// Piecewise-linear a(lambda) through the table points, clamped outside.
double interpolate_sound(const std::vector<std::pair<double, double>>& table,
                         double lambda);

// Writes through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);

std::string format_double(double v);

}  // namespace phasefront
