#include "nearplane/protocols.hpp"

#include <stdexcept>

#include "nearplane/entropy.hpp"
#include "nearplane/errors.hpp"

namespace nearplane {

const char* to_string(Sender s) { return s == Sender::S1 ? "S1" : "S2"; }

namespace {

void require_in_cell(const CellGeometry& g, const Point2& x) {
  if (!g.contains(x)) throw OutOfCell("point outside the Babai cell B(0)");
}

void push(Transcript& t, Sender sender, int symbol, double bits) {
  t.messages.push_back({sender, symbol, bits});
  t.total_bits += bits;
}

// First speaker bins `lead`, responder splits `reply` with the bin's plan.
Transcript run_single_round(const StripQuantizer& q, Sender lead, double lead_coord,
                            double reply_coord) {
  const Sender reply = lead == Sender::S1 ? Sender::S2 : Sender::S1;
  Transcript t;
  const int bin = q.axis().bin_of(lead_coord);
  push(t, lead, q.symbol_of_bin(bin), ideal_codelength(q.bin_probability(bin)));
  const CutPlan& plan = q.plan(bin);
  const int answer = plan.respond(reply_coord);
  push(t, reply, answer, ideal_codelength(plan.probs[answer + 1]));
  t.decision = plan.label(answer);
  t.rounds = 1;
  t.halted = true;
  return t;
}

IntegerPair replay_single_round(const Transcript& t, const StripQuantizer& q) {
  if (t.messages.size() != 2) throw std::invalid_argument("single-round transcript needs 2 messages");
  return q.plan(q.bin_of_symbol(t.messages[0].symbol)).label(t.messages[1].symbol);
}

}  // namespace

Transcript run_single_round_12(const Point2& x, const CellGeometry& geometry, const Quantizer12& q) {
  require_in_cell(geometry, x);
  return run_single_round(q, Sender::S1, x.x1, x.x2);
}

Transcript run_single_round_12(const Point2& x, const LatticeParams& params, const Quantizer12& q) {
  return run_single_round_12(x, cell_geometry(params), q);
}

IntegerPair replay_single_round_12(const Transcript& t, const Quantizer12& q) {
  return replay_single_round(t, q);
}

Transcript run_single_round_21(const Point2& x, const CellGeometry& geometry, const Quantizer21& q) {
  require_in_cell(geometry, x);
  return run_single_round(q, Sender::S2, x.x2, x.x1);
}

Transcript run_single_round_21(const Point2& x, const LatticeParams& params, const Quantizer21& q) {
  return run_single_round_21(x, cell_geometry(params), q);
}

IntegerPair replay_single_round_21(const Transcript& t, const Quantizer21& q) {
  return replay_single_round(t, q);
}

InfiniteRoundsProtocol::InfiniteRoundsProtocol(const CellGeometry& geometry) : geometry_(geometry) {
  const double q1 = geometry_.H1 / geometry_.H;
  q_ = {q1, geometry_.H0 / geometry_.H, q1};
  p_upper_ = {geometry_.t_m2 + 0.5, geometry_.t_1 - geometry_.t_m2, 0.5 - geometry_.t_1};
}

int InfiniteRoundsProtocol::first_u1(double x1, int u2) const {
  // For U2 = -1 the partition is the mirror image of the U2 = 1 one.
  const double left = u2 > 0 ? geometry_.t_m2 : geometry_.t_m1;
  const double right = u2 > 0 ? geometry_.t_1 : geometry_.t_2;
  if (x1 <= left) return -1;
  if (x1 > right) return 1;
  return 0;
}

double InfiniteRoundsProtocol::u1_probability(int u1, int u2) const {
  return p_upper_[u2 > 0 ? u1 + 1 : 1 - u1];
}

const BoundarySegment& InfiniteRoundsProtocol::corner_segment(int u2, int u1) const {
  for (const auto& s : geometry_.boundary_segments) {
    if (s.upper() == (u2 > 0) && (s.vertical_end.x1 > 0) == (u1 > 0)) return s;
  }
  throw std::logic_error("no boundary segment for the requested corner cell");
}

Rect InfiniteRoundsProtocol::bounding_rect(const BoundarySegment& s) {
  return {s.x1_lo(), s.x1_hi(), s.x2_lo(), s.x2_hi()};
}

namespace {

// The corner cell in bisection coordinates (s, t) in [0, 1]^2, where s is
// the normalized x1 reflected for positive slopes so the boundary is always
// the anti-diagonal s + t = 1.
struct Bisection {
  Rect base;
  bool reflect;
  double s0 = 0.0, t0 = 0.0, size = 1.0;

  void step(int b, int c) {
    size *= 0.5;
    if (b > 0) s0 += size;
    if (c > 0) t0 += size;
  }
  Rect current() const {
    const double w = base.x1_hi - base.x1_lo;
    const double h = base.x2_hi - base.x2_lo;
    const double u_lo = reflect ? 1.0 - (s0 + size) : s0;
    return {base.x1_lo + u_lo * w, base.x1_lo + (u_lo + size) * w, base.x2_lo + t0 * h,
            base.x2_lo + (t0 + size) * h};
  }
};

IntegerPair side_of(const BoundarySegment& seg, const Point2& p) {
  return seg.side(p) > 0 ? seg.neighbor : IntegerPair{0, 0};
}

int round1_u2(const CellGeometry& g, double x2) {
  if (x2 <= g.tau_m1) return -1;
  if (x2 > g.tau_1) return 1;
  return 0;
}

}  // namespace

Transcript InfiniteRoundsProtocol::run(const Point2& x, int max_rounds) const {
  require_in_cell(geometry_, x);
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  Transcript t;
  t.rounds = 1;
  const int u2 = round1_u2(geometry_, x.x2);
  push(t, Sender::S2, u2, ideal_codelength(q_[u2 + 1]));
  if (u2 == 0) {
    t.halted = true;
    return t;
  }
  const int u1 = first_u1(x.x1, u2);
  push(t, Sender::S1, u1, ideal_codelength(u1_probability(u1, u2)));
  if (u1 == 0) {
    t.halted = true;
    return t;
  }

  const BoundarySegment& seg = corner_segment(u2, u1);
  const Rect box = bounding_rect(seg);
  const bool reflect = seg.slope > 0;
  double s = (x.x1 - box.x1_lo) / (box.x1_hi - box.x1_lo);
  if (reflect) s = 1.0 - s;
  double w = (x.x2 - box.x2_lo) / (box.x2_hi - box.x2_lo);
  Bisection bis{box, reflect};

  while (true) {
    if (t.rounds >= max_rounds) {
      t.halted = false;
      t.decision = side_of(seg, x);
      return t;
    }
    const int b = s >= 0.5 ? 1 : 0;
    const int c = w >= 0.5 ? 1 : 0;
    s = 2.0 * s - b;
    w = 2.0 * w - c;
    push(t, Sender::S1, 2 * b - 1, 1.0);
    push(t, Sender::S2, 2 * c - 1, 1.0);
    ++t.rounds;
    bis.step(b, c);
    if (b == c) {
      t.halted = true;
      t.decision = side_of(seg, bis.current().center());
      return t;
    }
  }
}

std::vector<Rect> InfiniteRoundsProtocol::rectangles(const Transcript& t) const {
  std::vector<Rect> out;
  if (t.messages.size() < 2 || t.messages[0].symbol == 0 || t.messages[1].symbol == 0) return out;
  const BoundarySegment& seg = corner_segment(t.messages[0].symbol, t.messages[1].symbol);
  Bisection bis{bounding_rect(seg), seg.slope > 0};
  out.push_back(bis.current());
  for (std::size_t i = 2; i + 1 < t.messages.size(); i += 2) {
    bis.step(t.messages[i].symbol > 0 ? 1 : 0, t.messages[i + 1].symbol > 0 ? 1 : 0);
    out.push_back(bis.current());
  }
  return out;
}

IntegerPair InfiniteRoundsProtocol::replay(const Transcript& t) const {
  if (t.messages.empty()) throw std::invalid_argument("empty transcript");
  if (t.messages[0].symbol == 0 || t.messages.size() < 2 || t.messages[1].symbol == 0) {
    return {0, 0};
  }
  const BoundarySegment& seg = corner_segment(t.messages[0].symbol, t.messages[1].symbol);
  return side_of(seg, rectangles(t).back().center());
}

Transcript run_infinite_rounds(const Point2& x, const LatticeParams& params, int max_rounds) {
  return InfiniteRoundsProtocol(cell_geometry(params)).run(x, max_rounds);
}

}  // namespace nearplane
