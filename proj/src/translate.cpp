#include "surf/translate.hpp"

#include <cmath>

namespace surf {

EquilateralLength equilateral_length(const PrimalWalk& w) {
  // unit area forces side length 2/3^(1/4)
  return {w.length() * 2.0 / std::pow(3.0, 0.25)};
}

PrimalWalk snap_to_primal(const Triangulation& t, const CrossCurve& c) {
  if (c.crossings.empty())
    throw SurfError(ErrorCode::DegenerateCurve,
                    "curve crosses no edge; it is contractible inside a triangle");
  const CombinatorialMap& m = t.map();
  // dual ids coincide with primal ids: crossing h lies on primal edge h/2 and
  // the zone before crossing h is the primal vertex at the tail of twin(h).
  PrimalWalk w;
  for (int32_t h : c.crossings) {
    SURF_CHECK(h >= 0 && h < m.num_darts(), "crossing dart out of range");
    w.darts.push_back(m.twin(h));
  }
  // cancel backtracks cyclically until stable
  bool changed = true;
  while (changed && w.darts.size() >= 2) {
    changed = false;
    std::vector<int32_t> out;
    size_t n = w.darts.size();
    for (size_t i = 0; i < n; ++i) {
      if (!out.empty() && out.back() == m.twin(w.darts[i])) {
        out.pop_back();
        changed = true;
      } else {
        out.push_back(w.darts[i]);
      }
    }
    while (out.size() >= 2 && out.front() == m.twin(out.back())) {
      out.erase(out.begin());
      out.pop_back();
      changed = true;
    }
    w.darts = std::move(out);
  }
  return w;
}

}  // namespace surf
