#include "rgstar/growth.hpp"

#include <ostream>

namespace rgstar {

const char* to_string(GrowthEventKind kind) {
  switch (kind) {
    case GrowthEventKind::Extend: return "extend";
    case GrowthEventKind::Blocked: return "blocked";
    case GrowthEventKind::Recoil: return "recoil";
    case GrowthEventKind::Fail: return "fail";
    case GrowthEventKind::Success: return "success";
  }
  return "?";
}

void write_growth_trace(std::ostream& out, std::span<const GrowthEvent> trace) {
  for (const auto& e : trace)
    out << to_string(e.kind) << ' ' << e.length << ' ' << e.vertex << " lmax=" << e.l_max << " delta=" << e.delta
        << '\n';
}

}  // namespace rgstar
