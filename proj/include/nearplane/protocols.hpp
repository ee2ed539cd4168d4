#pragma once

#include <array>
#include <string>
#include <vector>

#include "nearplane/geometry.hpp"
#include "nearplane/quantizer.hpp"

namespace nearplane {

enum class Sender { S1, S2 };

const char* to_string(Sender s);

/// One message. Bin messages carry a centered bin index, decision messages
/// a ternary symbol in {-1, 0, 1}, and bisection messages a binary digit
/// encoded as -1 (digit 0) or +1 (digit 1) so that point reflection negates
/// every symbol.
struct Message {
  Sender sender = Sender::S1;
  int symbol = 0;
  double ideal_bits = 0.0;  // -log2 P(symbol), or 1.0 for a bisection digit

  friend bool operator==(const Message&, const Message&) = default;
};

struct Transcript {
  std::vector<Message> messages;
  int rounds = 0;
  double total_bits = 0.0;
  IntegerPair decision;
  bool halted = false;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// S1 sends its x1 bin, S2 answers with the side of its strip cuts.
Transcript run_single_round_12(const Point2& x, const CellGeometry& geometry, const Quantizer12& q);
Transcript run_single_round_12(const Point2& x, const LatticeParams& params, const Quantizer12& q);
/// Decision recomputed from the messages alone.
IntegerPair replay_single_round_12(const Transcript& t, const Quantizer12& q);

/// S2 sends its x2 bin, S1 answers with the side of its row cuts.
Transcript run_single_round_21(const Point2& x, const CellGeometry& geometry, const Quantizer21& q);
Transcript run_single_round_21(const Point2& x, const LatticeParams& params, const Quantizer21& q);
IntegerPair replay_single_round_21(const Transcript& t, const Quantizer21& q);

struct Rect {
  double x1_lo = 0, x1_hi = 0, x2_lo = 0, x2_hi = 0;
  Point2 center() const { return {0.5 * (x1_lo + x1_hi), 0.5 * (x2_lo + x2_hi)}; }
};

inline constexpr int kDefaultMaxRounds = 64;

/// Unbounded-round refinement. Round 1 resolves the ternary partitions of
/// x2 and then x1; the four corner cells left over each have a Voronoi
/// boundary as their diagonal and are bisected one digit per node per round
/// until both digits agree.
class InfiniteRoundsProtocol {
 public:
  explicit InfiniteRoundsProtocol(const CellGeometry& geometry);

  Transcript run(const Point2& x, int max_rounds = kDefaultMaxRounds) const;

  /// Decision recomputed from the messages alone (halted transcripts).
  IntegerPair replay(const Transcript& t) const;

  /// Corner cell after round 1 followed by the surviving cell after each
  /// bisection round; empty when round 1 already halts.
  std::vector<Rect> rectangles(const Transcript& t) const;

  /// Round-1 corner cell for (U2, U1) with both non-zero, and its boundary.
  const BoundarySegment& corner_segment(int u2, int u1) const;
  static Rect bounding_rect(const BoundarySegment& s);

  const CellGeometry& geometry() const { return geometry_; }

 private:
  int first_u1(double x1, int u2) const;
  double u1_probability(int u1, int u2) const;

  CellGeometry geometry_;
  std::array<double, 3> q_{};       // P(U2 = -1, 0, 1)
  std::array<double, 3> p_upper_{}; // P(U1 = -1, 0, 1 | U2 = 1)
};

Transcript run_infinite_rounds(const Point2& x, const LatticeParams& params,
                               int max_rounds = kDefaultMaxRounds);

}  // namespace nearplane
