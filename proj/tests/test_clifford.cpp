#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "vzsim/angles.hpp"
#include "vzsim/clifford.hpp"
#include "vzsim/rng.hpp"
#include "vzsim/schedule.hpp"
#include "vzsim/su2.hpp"

using namespace vzsim;

namespace {

const CliffordTable& table() {
  static const CliffordTable t = build_clifford_table();
  return t;
}

// Exhaustive minimal word lengths over a generator set, up to max_len.
std::array<int, 24> brute_force_minimal_lengths(
    const std::vector<BasisGate>& gens, int max_len) {
  std::array<int, 24> best;
  best.fill(-1);
  best[table().identity_index] = 0;
  std::vector<Mat2> frontier{Mat2::Identity()};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Mat2> next;
    next.reserve(frontier.size() * gens.size());
    for (const Mat2& m : frontier) {
      for (BasisGate g : gens) {
        const Mat2 prod = basis_gate_matrix(g) * m;
        const int idx = clifford_index_of(table(), prod);
        REQUIRE(idx >= 0);
        if (best[idx] < 0) best[idx] = len;
        next.push_back(prod);
      }
    }
    frontier = std::move(next);
  }
  return best;
}

int finite_count(const BasisWord& word) {
  int n = 0;
  for (BasisGate g : word) {
    if (is_finite_duration(g)) ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("clifford") {

TEST_CASE("the group has 24 distinct elements closed under products") {
  const auto& t = table();
  for (int a = 0; a < 24; ++a) {
    for (int b = 0; b < 24; ++b) {
      if (a != b) {
        CHECK(phase_gauged_distance(t.matrix[a], t.matrix[b]) > 0.5);
      }
      const int p = t.product[a][b];
      CHECK(phase_gauged_distance(t.matrix[p], t.matrix[a] * t.matrix[b]) <
            1e-9);
    }
    CHECK(t.product[t.inverse[a]][a] == t.identity_index);
    CHECK(t.product[a][t.inverse[a]] == t.identity_index);
  }
  CHECK(phase_gauged_distance(t.matrix[t.identity_index], Mat2::Identity()) <
        1e-12);
}

TEST_CASE("every word composes to its Clifford") {
  const auto& t = table();
  for (int i = 0; i < 24; ++i) {
    CHECK(phase_gauged_distance(word_matrix(t.xy_word[i]), t.matrix[i]) < 1e-9);
    CHECK(phase_gauged_distance(word_matrix(t.hz_word[i]), t.matrix[i]) < 1e-9);
    for (BasisGate g : t.xy_word[i]) CHECK(is_finite_duration(g));
  }
}

TEST_CASE("finite-duration basis statistics") {
  const auto& t = table();
  CHECK(t.xy_total_gates == 54);
  CHECK(t.xy_mean_gates() == 2.25);
  // Identity is played as a canceling pair; everything else is minimal.
  // Depth 4 is needed: the z half-turn cannot be reached in three pulses.
  const auto minimal = brute_force_minimal_lengths(
      {BasisGate::XPlus90, BasisGate::XMinus90, BasisGate::YPlus90,
       BasisGate::YMinus90},
      4);
  for (int i = 0; i < 24; ++i) {
    REQUIRE(minimal[i] >= 0);
    if (i == t.identity_index) {
      CHECK(t.xy_word[i].size() == 2);
    } else {
      CHECK(static_cast<int>(t.xy_word[i].size()) == minimal[i]);
    }
  }
}

TEST_CASE("virtual-z basis statistics") {
  const auto& t = table();
  CHECK(t.hz_total_gates == 59);
  CHECK(t.hz_mean_gates() == 59.0 / 24.0);
  CHECK(t.hz_total_hadamards == 26);

  const auto minimal = brute_force_minimal_lengths(
      {BasisGate::Hadamard, BasisGate::ZPlus90, BasisGate::ZMinus90,
       BasisGate::ZPi},
      4);
  for (int i = 0; i < 24; ++i) {
    REQUIRE(minimal[i] >= 0);
    const auto& word = t.hz_word[i];
    if (i == t.identity_index) {
      // Bookkept as a single explicit virtual gate.
      CHECK(word.size() == 1);
      CHECK(word[0] == BasisGate::IdentityZ);
    } else {
      CHECK(static_cast<int>(word.size()) == minimal[i]);
    }
    // Words fit the z-h-z-h-z shape: at most five gates, at most two
    // Hadamards, and kinds strictly alternate (adjacent virtual gates would
    // merge, adjacent pulses would contradict minimality).
    CHECK(word.size() <= 5);
    CHECK(finite_count(word) <= 2);
    for (std::size_t k = 1; k < word.size(); ++k) {
      CHECK(is_finite_duration(word[k]) != is_finite_duration(word[k - 1]));
    }
  }
}

TEST_CASE("hadamard-times-axis-rotation Cliffords use exactly one pulse") {
  const auto& t = table();
  const Mat2 h = basis_gate_matrix(BasisGate::Hadamard);
  // H times a Pauli-axis rotation stays in the coset whose elements all have
  // entry moduli 1/sqrt(2), so one Hadamard suffices -- except the two
  // degenerate products that collapse back onto Pauli rotations.
  for (double angle : {pi / 2.0, -pi / 2.0, pi}) {
    for (int axis = 0; axis < 3; ++axis) {
      if (axis == 1 && angle != pi) continue;  // degenerate, checked below
      Mat2 rot;
      if (axis == 0) rot = x_rotation(angle);
      if (axis == 1) rot = axis_rotation(angle, pi / 2.0);
      if (axis == 2) rot = z_rotation(angle);
      const int idx = clifford_index_of(t, h * rot);
      REQUIRE(idx >= 0);
      CHECK(finite_count(t.hz_word[idx]) == 1);
    }
  }
  // H itself as well (axis rotation of angle zero).
  const int h_idx = clifford_index_of(t, h);
  CHECK(finite_count(t.hz_word[h_idx]) == 1);

  // The degenerate pair: H * Y_{+90} is the z half-turn (virtual, zero
  // pulses) and H * Y_{-90} is the x half-turn, which leaves the coset and
  // cannot be realized with fewer than two Hadamards.
  const int zpi_idx = clifford_index_of(t, h * axis_rotation(pi / 2.0, pi / 2.0));
  CHECK(zpi_idx == clifford_index_of(t, z_rotation(pi)));
  CHECK(finite_count(t.hz_word[zpi_idx]) == 0);
  const int xpi_idx =
      clifford_index_of(t, h * axis_rotation(-pi / 2.0, pi / 2.0));
  CHECK(xpi_idx == clifford_index_of(t, x_rotation(pi)));
  CHECK(finite_count(t.hz_word[xpi_idx]) == 2);
}

TEST_CASE("x quarter turns route through hadamard conjugation") {
  const auto& t = table();
  const int xp = clifford_index_of(t, x_rotation(pi / 2.0));
  const int xm = clifford_index_of(t, x_rotation(-pi / 2.0));
  CHECK(t.hz_word[xp] ==
        BasisWord{BasisGate::Hadamard, BasisGate::ZPlus90, BasisGate::Hadamard});
  CHECK(t.hz_word[xm] == BasisWord{BasisGate::Hadamard, BasisGate::ZMinus90,
                                   BasisGate::Hadamard});
}

TEST_CASE("benchmarking sequences invert exactly and reproduce under a key") {
  const auto& t = table();
  for (std::uint64_t key : {1ULL, 99ULL, 123456789ULL}) {
    for (int m : {1, 2, 10, 50}) {
      const RbSequence seq = rb_sequence(m, key, t);
      REQUIRE(static_cast<int>(seq.cliffords.size()) == m);
      Mat2 u = Mat2::Identity();
      for (int c : seq.cliffords) u = t.matrix[c] * u;
      u = t.matrix[seq.recovery] * u;
      CHECK(phase_gauged_distance(u, Mat2::Identity()) <= 1e-10);

      const RbSequence again = rb_sequence(m, key, t);
      CHECK(again.cliffords == seq.cliffords);
      CHECK(again.recovery == seq.recovery);
    }
  }
  CHECK(rb_sequence(20, 7, t).cliffords != rb_sequence(20, 8, t).cliffords);
}

TEST_CASE("interleaving inserts the gate after every random Clifford") {
  const auto& t = table();
  const RbSequence seq = rb_sequence(2, 5, t);
  const int s_idx = clifford_index_of(t, z_rotation(pi / 2.0));
  REQUIRE(s_idx >= 0);
  const RbSequence inter = interleave(seq, s_idx, t);
  REQUIRE(inter.cliffords.size() == 4);
  CHECK(inter.cliffords[0] == seq.cliffords[0]);
  CHECK(inter.cliffords[1] == s_idx);
  CHECK(inter.cliffords[2] == seq.cliffords[1]);
  CHECK(inter.cliffords[3] == s_idx);

  Mat2 u = Mat2::Identity();
  for (int c : inter.cliffords) u = t.matrix[c] * u;
  u = t.matrix[inter.recovery] * u;
  CHECK(phase_gauged_distance(u, Mat2::Identity()) <= 1e-10);

  // Interleaving the identity keeps the recovery element unchanged.
  const RbSequence trivial = interleave(seq, t.identity_index, t);
  CHECK(trivial.recovery == seq.recovery);
}

TEST_CASE("sequence sampling covers the group roughly uniformly") {
  const auto& t = table();
  const RbSequence seq = rb_sequence(2400, 2024, t);
  std::map<int, int> counts;
  for (int c : seq.cliffords) counts[c]++;
  REQUIRE(counts.size() == 24);
  for (const auto& [idx, n] : counts) {
    (void)idx;
    CHECK(n > 50);
    CHECK(n < 160);
  }
}

TEST_CASE("index mapping is order preserving at the extremes") {
  CHECK(uniform_index(0, 24) == 0);
  CHECK(uniform_index(~0ULL, 24) == 23);
}

TEST_CASE("basis gates expand to schedules that play them") {
  for (BasisGate g :
       {BasisGate::XPlus90, BasisGate::XMinus90, BasisGate::YPlus90,
        BasisGate::YMinus90, BasisGate::Hadamard, BasisGate::IdentityZ,
        BasisGate::ZPlus90, BasisGate::ZMinus90, BasisGate::ZPi}) {
    const GateSchedule ops = basis_gate_schedule(g, "d0");
    CHECK(phase_gauged_distance(ideal_logical_unitary(ops),
                                basis_gate_matrix(g)) < 1e-12);
  }

  // The correction sandwich turns a pulse into Z(-xi) * pulse * Z(-xi).
  const double xi = 0.123;
  const GateSchedule ops = basis_gate_schedule(BasisGate::XPlus90, "d0", xi);
  const Mat2 expected =
      z_rotation(-xi) * x_rotation(pi / 2.0) * z_rotation(-xi);
  CHECK(phase_gauged_distance(ideal_logical_unitary(ops), expected) < 1e-12);
  // Virtual gates never acquire a sandwich.
  const GateSchedule vz = basis_gate_schedule(BasisGate::ZPlus90, "d0", xi);
  CHECK(vz.size() == 1);
}

TEST_CASE("whole-Clifford schedules play the tabulated matrices") {
  const auto& t = table();
  for (int i : {0, 3, 7, 11, 17, 23}) {
    for (bool hz : {false, true}) {
      const GateSchedule ops = clifford_schedule(t, i, hz, "d0");
      CHECK(phase_gauged_distance(ideal_logical_unitary(ops), t.matrix[i]) <
            1e-10);
    }
  }
  // With a correction sandwich the schedule still parses and plays pulses.
  const GateSchedule ops = clifford_schedule(t, 5, true, "d0", 0.07);
  const GateSchedule reparsed = parse_schedule(serialize_schedule(ops));
  CHECK(reparsed.size() == ops.size());
}

}  // TEST_SUITE("clifford")
