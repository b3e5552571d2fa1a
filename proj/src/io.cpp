#include "surf/io.hpp"

#include <fstream>
#include <sstream>

namespace surf {

void write_cmap(std::ostream& os, const CombinatorialMap& m) {
  os << "cmap 1 " << m.num_darts() << ' ' << m.num_boundaries() << '\n';
  for (int32_t d = 0; d < m.num_darts(); ++d)
    os << d << ' ' << m.twin(d) << ' ' << m.next(d) << '\n';
  for (int32_t f : m.hole_faces()) os << m.face_dart(f) << '\n';
}

CombinatorialMap read_cmap(std::istream& is) {
  std::string magic;
  int version = 0, h = 0, b = 0;
  if (!(is >> magic >> version >> h >> b) || magic != "cmap" || version != 1)
    throw SurfError(ErrorCode::BadFile, "bad .cmap header");
  if (h <= 0 || h % 2 != 0) throw SurfError(ErrorCode::BadFile, "bad half-edge count");
  std::vector<int32_t> twin(h, -1), next(h, -1);
  for (int i = 0; i < h; ++i) {
    int32_t id, t, n;
    if (!(is >> id >> t >> n) || id < 0 || id >= h)
      throw SurfError(ErrorCode::BadFile, "bad half-edge line");
    twin[id] = t;
    next[id] = n;
  }
  std::vector<int32_t> reps(b);
  for (int i = 0; i < b; ++i) {
    if (!(is >> reps[i])) throw SurfError(ErrorCode::BadFile, "missing boundary face line");
  }
  return CombinatorialMap(std::move(twin), std::move(next), std::move(reps));
}

void write_cmap_file(const std::string& path, const CombinatorialMap& m) {
  std::ofstream f(path);
  if (!f) throw SurfError(ErrorCode::BadFile, "cannot write " + path);
  write_cmap(f, m);
}

CombinatorialMap read_cmap_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SurfError(ErrorCode::BadFile, "cannot read " + path);
  return read_cmap(f);
}

void write_curves(std::ostream& os, const std::vector<CrossCurve>& curves) {
  os << "curves 1 " << curves.size() << '\n';
  for (const auto& c : curves) {
    os << c.length();
    for (int32_t d : c.crossings) os << ' ' << d / 2 << ' ' << (d & 1);
    os << '\n';
  }
}

std::vector<CrossCurve> read_curves(std::istream& is) {
  std::string magic;
  int version = 0, k = 0;
  if (!(is >> magic >> version >> k) || magic != "curves" || version != 1)
    throw SurfError(ErrorCode::BadFile, "bad .curves header");
  std::vector<CrossCurve> out(k);
  for (auto& c : out) {
    int len;
    if (!(is >> len) || len < 0) throw SurfError(ErrorCode::BadFile, "bad curve length");
    c.crossings.resize(len);
    for (auto& d : c.crossings) {
      int32_t e, bit;
      if (!(is >> e >> bit) || bit < 0 || bit > 1)
        throw SurfError(ErrorCode::BadFile, "bad crossing entry");
      d = 2 * e + bit;
    }
  }
  return out;
}

void write_curves_file(const std::string& path, const std::vector<CrossCurve>& curves) {
  std::ofstream f(path);
  if (!f) throw SurfError(ErrorCode::BadFile, "cannot write " + path);
  write_curves(f, curves);
}

std::vector<CrossCurve> read_curves_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SurfError(ErrorCode::BadFile, "cannot read " + path);
  return read_curves(f);
}

}  // namespace surf
