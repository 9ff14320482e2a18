#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitopal/face.hpp"
#include "orbitopal/vertices.hpp"

namespace orbitopal {

// Row structure of a fixing-ready face.
//   alpha(i): largest column a vertex in the face can use in row i
//   mu(i):    smallest column of row i that is not zero-fixed
//   gamma:    rows where alpha increases (row 1 included), ascending
struct AlphaProfile {
  std::vector<int> alpha_values;
  std::vector<int> mu_values;
  std::vector<int> gamma;
  std::vector<bool> in_gamma_flags;

  int rows() const { return static_cast<int>(alpha_values.size()); }
  int alpha(int i) const { return alpha_values[static_cast<std::size_t>(i - 1)]; }
  int mu(int i) const { return mu_values[static_cast<std::size_t>(i - 1)]; }
  bool in_gamma(int i) const { return in_gamma_flags[static_cast<std::size_t>(i - 1)]; }

  // Prop. 4.6(1): the face contains no vertex iff some mu_i > alpha_i.
  bool feasible() const {
    for (int i = 1; i <= rows(); ++i)
      if (mu(i) > alpha(i)) return false;
    return true;
  }
};

inline void require_fixing_ready(const CubeFace& face, const OrbitopeShape& shape) {
  const FaceCheck c = check_face(face, shape);
  if (c != FaceCheck::ok) throw std::invalid_argument(std::string("face is not fixing-ready: ") + to_string(c));
}

namespace detail {

inline int first_free_column(const BitSet& zeros, const OrbitopeShape& shape, int i) {
  const std::size_t off = shape.row_offset(i);
  const int len = shape.row_length(i);
  for (int j = 1; j <= len; ++j)
    if (!zeros.test(off + static_cast<std::size_t>(j - 1))) return j;
  return len + 1;
}

// One step of the alpha recursion: the successor of value `prev` in row i.
inline int next_alpha(const BitSet& zeros, const OrbitopeShape& shape, int i, int prev) {
  if (prev == shape.row_length(i)) return prev;
  if (zeros.test(shape.row_offset(i) + static_cast<std::size_t>(prev))) return prev;  // cell (i, prev+1)
  return prev + 1;
}

}  // namespace detail

inline AlphaProfile compute_profile(const CubeFace& face, const OrbitopeShape& shape) {
  require_fixing_ready(face, shape);
  const int p = shape.rows();
  AlphaProfile prof;
  prof.alpha_values.resize(static_cast<std::size_t>(p));
  prof.mu_values.resize(static_cast<std::size_t>(p));
  prof.in_gamma_flags.assign(static_cast<std::size_t>(p), false);
  for (int i = 1; i <= p; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    prof.mu_values[k] = detail::first_free_column(face.zeros, shape, i);
    if (i == 1) {
      prof.alpha_values[k] = 1;
    } else {
      prof.alpha_values[k] = detail::next_alpha(face.zeros, shape, i, prof.alpha_values[k - 1]);
    }
    if (i == 1 || prof.alpha_values[k] == prof.alpha_values[k - 1] + 1) {
      prof.in_gamma_flags[k] = true;
      prof.gamma.push_back(i);
    }
  }
  return prof;
}

struct FixingStats {
  std::size_t flag_transitions = 0;
  std::size_t new_zeros = 0;
  std::size_t new_ones = 0;
};

// Result of a fixing: empty face (infeasible) or the enlarged face (I0*, I1*).
struct FixingOutcome {
  std::optional<CubeFace> face;
  FixingStats stats;

  bool infeasible() const { return !face.has_value(); }

  static FixingOutcome make_infeasible(FixingStats stats = {}) { return {std::nullopt, stats}; }
  static FixingOutcome make_fixed(CubeFace f, const CubeFace& input, FixingStats stats = {}) {
    stats.new_zeros = (f.zeros - input.zeros).count();
    stats.new_ones = (f.ones - input.ones).count();
    return {std::move(f), stats};
  }

  // Outcomes compare by the fixing only; statistics are diagnostics.
  friend bool operator==(const FixingOutcome& a, const FixingOutcome& b) { return a.face == b.face; }
};

enum class Flag : std::uint8_t { white, red, green };

// Per-cell memo for the second loop of the fixing algorithm. Flags move from
// white to red/green once and are never reset, which bounds the work of that
// loop by the number of cells.
class FlagBoard {
 public:
  explicit FlagBoard(std::size_t cells) : flags_(cells, Flag::white) {}

  Flag at(std::size_t idx) const { return flags_[idx]; }

  void mark(std::size_t idx, Flag f) {
    assert(f != Flag::white);
    if (flags_[idx] != Flag::white) {
      assert(flags_[idx] == f);
      return;
    }
    flags_[idx] = f;
    ++transitions_;
  }

  std::size_t transitions() const { return transitions_; }

 private:
  std::vector<Flag> flags_;
  std::size_t transitions_ = 0;
};

namespace detail {

// First loop shared by both variants: profile, infeasibility test, zero
// fixings beyond alpha and the one fixings of rows left with a single cell.
// Returns false if the fixing is empty.
inline bool fix_rows(const CubeFace& face, const OrbitopeShape& shape, AlphaProfile& prof, CubeFace& out) {
  const int p = shape.rows();
  prof.alpha_values.assign(static_cast<std::size_t>(p), 0);
  prof.mu_values.assign(static_cast<std::size_t>(p), 0);
  prof.in_gamma_flags.assign(static_cast<std::size_t>(p), false);
  prof.gamma.clear();
  for (int i = 1; i <= p; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    const int len = shape.row_length(i);
    const std::size_t off = shape.row_offset(i);
    const int mu = first_free_column(face.zeros, shape, i);
    int alpha = 1;
    if (i > 1) alpha = next_alpha(face.zeros, shape, i, prof.alpha_values[k - 1]);
    prof.mu_values[k] = mu;
    prof.alpha_values[k] = alpha;
    if (i == 1 || alpha == prof.alpha_values[k - 1] + 1) {
      prof.in_gamma_flags[k] = true;
      prof.gamma.push_back(i);
    }
    if (mu > alpha) return false;

    int zeros = 0;
    for (int j = 1; j <= len; ++j) {
      const std::size_t idx = off + static_cast<std::size_t>(j - 1);
      if (j > alpha) out.zeros.set(idx);
      zeros += out.zeros.test(idx);
    }
    if (zeros == len - 1) {
      for (int j = 1; j <= len; ++j) {
        const std::size_t idx = off + static_cast<std::size_t>(j - 1);
        if (!out.zeros.test(idx)) out.ones.set(idx);
      }
    }
  }
  return true;
}

inline void fix_row_to(const OrbitopeShape& shape, CubeFace& out, int s, int column) {
  const std::size_t off = shape.row_offset(s);
  for (int j = 1; j <= shape.row_length(s); ++j) {
    const std::size_t idx = off + static_cast<std::size_t>(j - 1);
    if (j == column)
      out.ones.set(idx);
    else
      out.zeros.set(idx);
  }
}

// Literal form of the second loop: one beta walk per increase row, Omega(p^2)
// in the worst case. Kept for differential testing of the flagged variant.
inline FixingOutcome orbitopal_fix_unflagged(const CubeFace& face, const OrbitopeShape& shape) {
  require_fixing_ready(face, shape);
  AlphaProfile prof;
  CubeFace out = face;
  if (!fix_rows(face, shape, prof, out)) return FixingOutcome::make_infeasible();
  for (int s : prof.gamma) {
    const int alpha_s = prof.alpha(s);
    if (out.ones.test(shape.index(s, alpha_s))) continue;
    int beta = alpha_s - 1;
    for (int i = s + 1; i <= shape.rows(); ++i) {
      beta = next_alpha(face.zeros, shape, i, beta);
      if (prof.mu(i) > beta) {
        fix_row_to(shape, out, s, alpha_s);
        break;
      }
    }
  }
  return FixingOutcome::make_fixed(std::move(out), face);
}

}  // namespace detail

// Simultaneous fixing of the partitioning orbitope at a fixing-ready face, in
// O(pq). The beta walks of the second loop share results through a FlagBoard:
// a walk stops at the first cell whose fate is already known.
inline FixingOutcome orbitopal_fix(const CubeFace& face, const OrbitopeShape& shape) {
  require_fixing_ready(face, shape);
  AlphaProfile prof;
  CubeFace out = face;
  if (!detail::fix_rows(face, shape, prof, out)) return FixingOutcome::make_infeasible();

  FlagBoard flags(shape.cell_count());
  std::vector<std::size_t> path;
  path.reserve(static_cast<std::size_t>(shape.rows()));
  for (int s : prof.gamma) {
    const int alpha_s = prof.alpha(s);
    if (out.ones.test(shape.index(s, alpha_s))) continue;

    int beta = alpha_s - 1;
    path.clear();
    path.push_back(shape.index(s, beta));
    bool positive = false;
    for (int i = s + 1; i <= shape.rows(); ++i) {
      beta = detail::next_alpha(face.zeros, shape, i, beta);
      const std::size_t idx = shape.index(i, beta);
      const Flag f = flags.at(idx);
      if (f != Flag::white) {
        positive = (f == Flag::red);
        break;
      }
      path.push_back(idx);
      if (prof.mu(i) > beta) {
        positive = true;
        break;
      }
    }
    for (std::size_t idx : path) flags.mark(idx, positive ? Flag::red : Flag::green);
    if (positive) detail::fix_row_to(shape, out, s, alpha_s);
  }
  FixingStats stats;
  stats.flag_transitions = flags.transitions();
  return FixingOutcome::make_fixed(std::move(out), face, stats);
}

// Definitional oracle: enumerate all vertices inside the face and keep the
// coordinates that are constant over them.
inline FixingOutcome brute_force_fix(const CubeFace& face, const OrbitopeShape& shape, EnumerationGuard guard = {}) {
  require_dim(face, shape);
  const std::size_t n = shape.cell_count();
  BitSet seen_one(n);
  BitSet always_one(n);
  bool any = false;
  enumerate_partitioning_vertices(
      shape,
      [&](const VertexMatrix& v) {
        const BitSet bits = to_bits(v, shape);
        if (bits.intersects(face.zeros) || !face.ones.is_subset_of(bits)) return;
        if (!any) {
          always_one = bits;
          any = true;
        } else {
          always_one &= bits;
        }
        seen_one |= bits;
      },
      guard);
  if (!any) return FixingOutcome::make_infeasible();
  CubeFace out(n);
  for (std::size_t k = 0; k < n; ++k)
    if (!seen_one.test(k)) out.zeros.set(k);
  out.ones = always_one;
  return FixingOutcome::make_fixed(std::move(out), face);
}

// The feasible point built from the profile: row i takes alpha_i when i is an
// increase row and mu_i otherwise.
inline VertexMatrix x_star(const AlphaProfile& prof, const OrbitopeShape& shape) {
  if (prof.rows() != shape.rows()) throw std::invalid_argument("profile does not match shape");
  VertexMatrix v;
  for (int i = 1; i <= prof.rows(); ++i) {
    if (prof.mu(i) > prof.alpha(i))
      throw std::domain_error("x_star needs mu_i <= alpha_i, violated in row " + std::to_string(i));
    v.column.push_back(prof.in_gamma(i) ? prof.alpha(i) : prof.mu(i));
  }
  return v;
}

// True iff no vertex inside the face uses a column beyond alpha_i in any row.
inline bool column_bound_check(const OrbitopeShape& shape, const CubeFace& face, EnumerationGuard guard = {}) {
  const AlphaProfile prof = compute_profile(face, shape);
  bool ok = true;
  enumerate_partitioning_vertices(
      shape,
      [&](const VertexMatrix& v) {
        const BitSet bits = to_bits(v, shape);
        if (bits.intersects(face.zeros) || !face.ones.is_subset_of(bits)) return;
        for (int i = 1; i <= shape.rows(); ++i)
          if (v(i) > prof.alpha(i)) ok = false;
      },
      guard);
  return ok;
}

// One-fixings implied by a zero set: the last free cell of every row that has
// all other cells fixed to zero.
inline BitSet derive_ones(const BitSet& zeros_star, const OrbitopeShape& shape) {
  if (zeros_star.size() != shape.cell_count()) throw std::invalid_argument("cell set does not match shape");
  BitSet ones(shape.cell_count());
  for (int i = 1; i <= shape.rows(); ++i) {
    const std::size_t off = shape.row_offset(i);
    const int len = shape.row_length(i);
    int free = 0;
    std::size_t last = 0;
    for (int j = 0; j < len; ++j) {
      if (!zeros_star.test(off + static_cast<std::size_t>(j))) {
        ++free;
        last = off + static_cast<std::size_t>(j);
      }
    }
    if (free == 1) ones.set(last);
  }
  return ones;
}

}  // namespace orbitopal
