#pragma once
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "surf/arrangement.hpp"
#include "surf/combinatorial_map.hpp"
#include "surf/cut.hpp"
#include "surf/io.hpp"

namespace surf {

// Bound checking for the quantities the analysis guarantees.  In hard mode a
// violation throws PaperBoundViolated; otherwise violations are collected.
struct BoundLedger {
  bool hard = true;
  std::vector<std::string> violations;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (hard) throw SurfError(ErrorCode::PaperBoundViolated, what);
    violations.push_back(what);
  }
};

// Two pieces whose right sides can be joined by a path crossing no piece and
// at most one edge of G*.  gate = that edge's segment dart (left face = the
// right face of piece_a), or -1 when both pieces share a face.
struct Tangency {
  int32_t piece_a = -1;
  int32_t piece_b = -1;
  int32_t gate = -1;
  bool same_curve = false;
};

enum class RewireOutcome { ContinuedAfterDiscard, Split, Merged };

// Live state of the shifting phase on one connected surface with boundary.
class ShiftState {
public:
  explicit ShiftState(const CrossMetricSurface& s);

  Arrangement& arrangement() { return *arr_; }
  const Arrangement& arrangement() const { return *arr_; }

  int num_tracks() const { return (int)tracks_.size(); }
  int pushes(int track) const { return tracks_[track].pushes; }
  int live_curve(int track) const { return tracks_[track].arr_id; }
  int total_live_length() const;
  int min_pushes() const;
  const CrossCurve& snapshot(int track, int level) const { return tracks_[track].snaps[level]; }

  // Shifts one curve one step to the right; requires its right corridor to be
  // free of tangencies.  Records the swept annulus area and asserts it is at
  // least the new length.
  void shift_one(int track, BoundLedger& ledger);

  // Spec operation: shifts every curve one step (round-robin); throws
  // TangencyPresent if a tangency exists at entry; if a tangency appears
  // mid-round the round stops there (remaining curves unshifted).
  void shift_right(BoundLedger& ledger);

  // Deterministic tangency detection (lowest piece dart, then lowest other).
  std::optional<Tangency> detect_tangency() const;
  std::optional<Tangency> detect_tangency_near(int track) const;

  // Rewires a tangency.  Same-curve rewires split the curve and test both
  // sides for contractibility; a contractible side is discarded (its disk
  // area logged) and shifting may continue.  Both-sides-essential restores
  // the pre-rewire state and reports Split.  Different curves report Merged
  // without surgery (the merged curve is never shifted again).
  RewireOutcome rewire(const Tangency& t, BoundLedger& ledger);

  // Largest c <= min pushes with U_c <= ell (U_c = total length at level c).
  int choose_s(int ell) const;

  // Permanently applies the exit tangency's rewiring (the backtrack-free
  // case s = r, where the rewired curves are the delta curves themselves).
  // Returns the resulting curve ids: two for a split, one for a merge.
  std::vector<int> apply_exit_rewire();

  long long swept_total() const { return swept_total_; }
  int track_of_curve(int arr_curve) const;
  int origin_hole_face(int track) const { return tracks_[track].origin_hole; }

  // internal records needed by the phase construction
  struct ArcInfo {
    int32_t back_wall = -1;  // contour dart on the arc's left (previous layer)
    int32_t behind = -1;     // arc of the previous layer across that wall
    int layer = 0;
    int track = -1;
  };
  const ArcInfo& arc_info(int32_t dart) const { return arc_info_[dart]; }
  const std::vector<int>& ghosts(int track) const { return tracks_[track].ghost_ids; }

  const Tangency& exit_tangency() const { return exit_tangency_; }
  RewireOutcome exit_outcome() const { return exit_outcome_; }
  bool exited() const { return exited_; }
  long long discarded_disk_area() const { return discarded_area_; }

private:
  friend class PantsEngine;
  struct Track {
    int arr_id = -1;
    int pushes = 0;
    int origin_hole = -1;
    std::vector<int> ghost_ids;
    std::vector<CrossCurve> snaps;
  };

  void set_arc_info(int32_t dart, const ArcInfo& info);
  void scan_track_for_tangency(int track, std::optional<Tangency>& best) const;
  bool consecutive(int32_t a, int32_t b) const;

  const CrossMetricSurface* surface_;
  std::unique_ptr<Arrangement> arr_;
  std::vector<Track> tracks_;
  std::vector<ArcInfo> arc_info_;
  long long swept_total_ = 0;
  long long discarded_area_ = 0;
  std::vector<char> swept_vertex_;
  Tangency exit_tangency_;
  RewireOutcome exit_outcome_ = RewireOutcome::ContinuedAfterDiscard;
  bool exited_ = false;
};

// Output of one application of the shift/split/merge procedure.
struct DecompositionStep {
  std::vector<CrossCurve> delta;  // the curves added, as sequences on the input
  std::vector<int> delta_lengths;
  CutResult cut;                   // all components of cutting along delta
  int pants_component = -1;        // exactly one pair of pants
  std::vector<int> annulus_components;
  std::vector<int> remainder_components;  // S' (no disks)
  // correspondence: per cut component hole -> index into `delta` (or -1 with
  // hole_base_face identifying an inherited hole)
  std::vector<std::vector<int>> hole_delta_index;
  int s = 0, r = 0;
  int eta_length = 0;
  int boundary_in = 0, boundary_out = 0;
  long long swept = 0;
  long long ops = 0;
};

// Proposition-level step: requires a connected cross-metric surface with
// non-empty boundary admitting a pants decomposition, and |bd S| <= ell.
DecompositionStep decompose_step(const CrossMetricSurface& s, int ell, BoundLedger& ledger);

// Phase entry points for a state that exited shifting; they validate the
// exit mode (NotInSplitState / NotInMergeState) and finish the step.
DecompositionStep splitting_phase(ShiftState& st, int ell, BoundLedger& ledger);
DecompositionStep merging_phase(ShiftState& st, int ell, BoundLedger& ledger);

struct PantsCurve {
  CrossCurve on_root;  // crossing sequence on the original surface
  int length = 0;
  int round = 0;  // which application emitted it (0 = the initial curve)
};

struct PantsDecomposition {
  std::vector<PantsCurve> curves;  // 3g-3 after deduplication
  double schedule_constant = 0.0;  // C in ell_k = C sqrt(k n)
  double per_curve_constant = 0.0; // curves satisfy len <= this * sqrt(g n)
  int applications = 0;            // decompose_step count (= 2g-2 pants)
  long long total_ops = 0;
  long long total_swept = 0;
  std::vector<std::string> trace;  // JSON lines (one per application)
  std::vector<std::string> violations;
};

// Theorem-level driver: genus >= 2, no boundary.  Deterministic.
PantsDecomposition pants_decomposition(const CrossMetricSurface& s, bool hard_bounds = true,
                                       bool want_trace = false);

}  // namespace surf
