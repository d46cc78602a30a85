#include "phasefront/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasefront/error.hpp"
#include "phasefront/model.hpp"

namespace phasefront {

double PhaseConfig::eta() const { return contact_strength(a_l, a_m); }
double PhaseConfig::zeta() const { return contact_strength(a_m, a_r); }

double PhaseConfig::sound_at(double x) const {
  if (x < x_a) return a_l;
  if (x < x_b) return a_m;
  return a_r;
}

double PhaseConfig::min_sound() const { return std::min({a_l, a_m, a_r}); }

const char* to_string(CaseTag c) {
  switch (c) {
    case CaseTag::Bubble: return "bubble";
    case CaseTag::Increasing: return "increasing";
    case CaseTag::Decreasing: return "decreasing";
  }
  return "unknown";
}

CaseTag classify(const PhaseConfig& cfg) {
  const double eta = cfg.eta();
  const double zeta = cfg.zeta();
  if (eta >= 0.0 && zeta <= 0.0) return CaseTag::Bubble;
  if (eta > 0.0 && zeta > 0.0) return CaseTag::Increasing;
  if (eta < 0.0 && zeta < 0.0) return CaseTag::Decreasing;
  throw Error(ErrorCode::OutsideDomain,
              "unsupported phase configuration (eta=" + std::to_string(eta) +
                  ", zeta=" + std::to_string(zeta) +
                  "): only bubble and monotone-pressure layouts are handled");
}

PhaseConfig reflect(const PhaseConfig& cfg) {
  PhaseConfig r;
  r.a_l = cfg.a_r;
  r.a_m = cfg.a_m;
  r.a_r = cfg.a_l;
  r.x_a = -cfg.x_b;
  r.x_b = -cfg.x_a;
  return r;
}

// Piece i covers [x_i, x_{i+1}); mirrored it covers (-x_{i+1}, -x_i], so the
// new starting points are the negated right ends.
InitialData reflect(const InitialData& data) {
  InitialData out;
  out.reserve(data.size());
  const std::size_t n = data.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = n - 1 - k;
    DataPiece p;
    p.v = data[i].v;
    p.u = -data[i].u;
    if (k == 0) {
      p.x = -data[i].x;  // unbounded piece; position is nominal
    } else {
      p.x = -data[i + 1].x;
    }
    out.push_back(p);
  }
  if (out.size() >= 2) {
    out[0].x = out[1].x - 1.0;
  }
  return out;
}

void validate(const PhaseConfig& cfg) {
  for (double a : {cfg.a_l, cfg.a_m, cfg.a_r}) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw Error(ErrorCode::InvalidArgument, "sound coefficients must be positive");
    }
  }
  if (!std::isfinite(cfg.x_a) || !std::isfinite(cfg.x_b) || !(cfg.x_a < cfg.x_b)) {
    throw Error(ErrorCode::InvalidArgument, "interfaces need x_a < x_b");
  }
}

void validate(const InitialData& data) {
  if (data.empty()) {
    throw Error(ErrorCode::InvalidArgument, "initial data needs at least one piece");
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    const DataPiece& p = data[i];
    if (!(p.v > 0.0) || !std::isfinite(p.v) || !std::isfinite(p.u) ||
        !std::isfinite(p.x)) {
      throw Error(ErrorCode::InvalidArgument,
                  "piece " + std::to_string(i) + " needs finite x, u and v > 0");
    }
    if (i > 0 && !(p.x > data[i - 1].x)) {
      throw Error(ErrorCode::InvalidArgument,
                  "piece positions must be strictly increasing (piece " +
                      std::to_string(i) + ")");
    }
  }
}

}  // namespace phasefront
