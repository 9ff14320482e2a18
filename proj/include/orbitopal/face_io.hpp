#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbitopal/face.hpp"

namespace orbitopal {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text form of a face:  "p q ; zeros: (i,j) ... ; ones: (i,j) ..."
// Cells are 1-based. The record itself does not restrict cells to the
// reduced index set, so it also carries full-grid covering instances.
struct FaceRecord {
  int p = 0;
  int q = 0;
  std::vector<CellIndex> zeros;
  std::vector<CellIndex> ones;
};

inline std::string format_face_record(const FaceRecord& r) {
  std::ostringstream os;
  os << r.p << ' ' << r.q << " ; zeros:";
  for (auto c : r.zeros) os << ' ' << to_string(c);
  os << " ; ones:";
  for (auto c : r.ones) os << ' ' << to_string(c);
  return os.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<CellIndex> parse_cell_list(std::string_view s) {
  std::vector<CellIndex> out;
  std::size_t pos = 0;
  while (true) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == s.size()) break;
    if (s[pos] != '(') throw ParseError("expected '(' in cell list near: " + std::string(s.substr(pos)));
    const auto close = s.find(')', pos);
    if (close == std::string_view::npos) throw ParseError("unterminated cell in: " + std::string(s));
    std::string inner(s.substr(pos + 1, close - pos - 1));
    std::replace(inner.begin(), inner.end(), ',', ' ');
    std::istringstream is(inner);
    CellIndex c;
    std::string extra;
    if (!(is >> c.i >> c.j) || (is >> extra)) throw ParseError("malformed cell: (" + std::string(s.substr(pos + 1, close - pos - 1)) + ")");
    out.push_back(c);
    pos = close + 1;
  }
  return out;
}

inline std::string_view after_label(std::string_view part, std::string_view label) {
  part = trim(part);
  if (part.substr(0, label.size()) != label) throw ParseError("expected '" + std::string(label) + "' section");
  return part.substr(label.size());
}

}  // namespace detail

inline FaceRecord parse_face_record(std::string_view text) {
  const auto s1 = text.find(';');
  if (s1 == std::string_view::npos) throw ParseError("face record needs 'p q ; zeros: ... ; ones: ...'");
  const auto s2 = text.find(';', s1 + 1);
  if (s2 == std::string_view::npos) throw ParseError("face record is missing the ones section");

  FaceRecord r;
  std::istringstream head{std::string(text.substr(0, s1))};
  std::string extra;
  if (!(head >> r.p >> r.q) || (head >> extra)) throw ParseError("face record header must be 'p q'");
  r.zeros = detail::parse_cell_list(detail::after_label(text.substr(s1 + 1, s2 - s1 - 1), "zeros:"));
  r.ones = detail::parse_cell_list(detail::after_label(text.substr(s2 + 1), "ones:"));
  return r;
}

inline FaceRecord to_record(const OrbitopeShape& shape, const CubeFace& face) {
  require_dim(face, shape);
  return {shape.rows(), shape.cols(), cells_of(shape, face.zeros), cells_of(shape, face.ones)};
}

inline std::string format_face(const OrbitopeShape& shape, const CubeFace& face) {
  return format_face_record(to_record(shape, face));
}

inline std::pair<OrbitopeShape, CubeFace> to_orbitope_face(const FaceRecord& r) {
  OrbitopeShape shape(r.p, r.q);
  CubeFace face(shape);
  for (auto c : r.zeros) {
    if (!shape.contains(c)) throw ParseError("zero cell " + to_string(c) + " outside the reduced index set");
    face.zeros.set(shape.index(c));
  }
  for (auto c : r.ones) {
    if (!shape.contains(c)) throw ParseError("one cell " + to_string(c) + " outside the reduced index set");
    face.ones.set(shape.index(c));
  }
  return {shape, face};
}

inline std::pair<OrbitopeShape, CubeFace> parse_face(std::string_view text) {
  return to_orbitope_face(parse_face_record(text));
}

}  // namespace orbitopal
