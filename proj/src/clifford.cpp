#include "vzsim/clifford.hpp"

#include <deque>
#include <stdexcept>

#include "vzsim/angles.hpp"
#include "vzsim/rng.hpp"

namespace vzsim {

bool is_finite_duration(BasisGate g) {
  switch (g) {
    case BasisGate::XPlus90:
    case BasisGate::XMinus90:
    case BasisGate::YPlus90:
    case BasisGate::YMinus90:
    case BasisGate::Hadamard:
      return true;
    default:
      return false;
  }
}

Mat2 basis_gate_matrix(BasisGate g) {
  switch (g) {
    case BasisGate::XPlus90:
      return x_rotation(pi / 2.0);
    case BasisGate::XMinus90:
      return x_rotation(-pi / 2.0);
    case BasisGate::YPlus90:
      return axis_rotation(pi / 2.0, pi / 2.0);
    case BasisGate::YMinus90:
      return axis_rotation(pi / 2.0, -pi / 2.0);
    case BasisGate::Hadamard:
      return u_from_zxz({pi / 2.0, pi / 2.0, pi / 2.0});
    case BasisGate::IdentityZ:
      return Mat2::Identity();
    case BasisGate::ZPlus90:
      return z_rotation(pi / 2.0);
    case BasisGate::ZMinus90:
      return z_rotation(-pi / 2.0);
    case BasisGate::ZPi:
      return z_rotation(pi);
  }
  throw std::invalid_argument("basis_gate_matrix: unknown gate");
}

const char* basis_gate_name(BasisGate g) {
  switch (g) {
    case BasisGate::XPlus90:
      return "X90";
    case BasisGate::XMinus90:
      return "X-90";
    case BasisGate::YPlus90:
      return "Y90";
    case BasisGate::YMinus90:
      return "Y-90";
    case BasisGate::Hadamard:
      return "H";
    case BasisGate::IdentityZ:
      return "I";
    case BasisGate::ZPlus90:
      return "Z90";
    case BasisGate::ZMinus90:
      return "Z-90";
    case BasisGate::ZPi:
      return "Z180";
  }
  return "?";
}

Mat2 word_matrix(const BasisWord& word) {
  Mat2 u = Mat2::Identity();
  for (BasisGate g : word) u = basis_gate_matrix(g) * u;
  return u;
}

int clifford_index_of(const CliffordTable& table, const Mat2& u) {
  for (int i = 0; i < 24; ++i) {
    if (phase_gauged_distance(table.matrix[i], u) < 1e-6) return i;
  }
  return -1;
}

namespace {

constexpr double kMatchTol = 1e-9;

int index_of(const std::vector<Mat2>& elements, const Mat2& u) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (phase_gauged_distance(elements[i], u) < 1e-6) return static_cast<int>(i);
  }
  return -1;
}

// Shortest words over `generators` reaching every group element, breadth
// first with a fixed expansion order (deterministic).
std::array<BasisWord, 24> bfs_words(const CliffordTable& table,
                                    const std::vector<BasisGate>& generators) {
  std::array<BasisWord, 24> words;
  std::array<bool, 24> found{};
  found[table.identity_index] = true;
  std::deque<int> queue{table.identity_index};
  int remaining = 23;
  while (!queue.empty() && remaining > 0) {
    const int cur = queue.front();
    queue.pop_front();
    for (BasisGate g : generators) {
      const Mat2 next = basis_gate_matrix(g) * table.matrix[cur];
      const int idx = clifford_index_of(table, next);
      if (idx < 0) throw std::logic_error("bfs_words: product left the group");
      if (found[idx]) continue;
      found[idx] = true;
      words[idx] = words[cur];
      words[idx].push_back(g);
      queue.push_back(idx);
      --remaining;
    }
  }
  if (remaining != 0) throw std::logic_error("bfs_words: group not covered");
  return words;
}

void override_word(CliffordTable& table, std::array<BasisWord, 24>& words,
                   int index, BasisWord replacement, bool must_match_length) {
  if (phase_gauged_distance(word_matrix(replacement), table.matrix[index]) >
      kMatchTol) {
    throw std::logic_error("override_word: replacement word is wrong");
  }
  if (must_match_length && replacement.size() != words[index].size()) {
    throw std::logic_error("override_word: replacement changes word length");
  }
  words[index] = std::move(replacement);
}

}  // namespace

CliffordTable build_clifford_table() {
  CliffordTable table;

  // Closure of {x_rotation(pi/2), z_rotation(pi/2)} modulo global phase.
  std::vector<Mat2> elements{Mat2::Identity()};
  const std::array<Mat2, 2> gens{x_rotation(pi / 2.0), z_rotation(pi / 2.0)};
  for (std::size_t cur = 0; cur < elements.size(); ++cur) {
    for (const Mat2& g : gens) {
      const Mat2 next = g * elements[cur];
      if (index_of(elements, next) < 0) elements.push_back(next);
    }
    if (elements.size() > 24) break;
  }
  if (elements.size() != 24) {
    throw std::logic_error("build_clifford_table: closure size != 24");
  }
  for (int i = 0; i < 24; ++i) table.matrix[i] = elements[i];
  table.identity_index = 0;

  for (int a = 0; a < 24; ++a) {
    for (int b = 0; b < 24; ++b) {
      const int idx = clifford_index_of(table, table.matrix[a] * table.matrix[b]);
      if (idx < 0) throw std::logic_error("build_clifford_table: not closed");
      table.product[a][b] = static_cast<std::uint8_t>(idx);
      if (idx == table.identity_index) {
        table.inverse[a] = static_cast<std::uint8_t>(b);
      }
    }
  }

  table.xy_word = bfs_words(
      table, {BasisGate::XPlus90, BasisGate::XMinus90, BasisGate::YPlus90,
              BasisGate::YMinus90});
  // A finite-duration basis has no zero-length realization; the identity
  // Clifford is played as a canceling pulse pair.
  override_word(table, table.xy_word, table.identity_index,
                {BasisGate::XPlus90, BasisGate::XMinus90},
                /*must_match_length=*/false);

  table.hz_word = bfs_words(
      table, {BasisGate::Hadamard, BasisGate::ZPlus90, BasisGate::ZMinus90,
              BasisGate::ZPi});
  // The identity Clifford is bookkept as one explicit (virtual) gate.
  override_word(table, table.hz_word, table.identity_index,
                {BasisGate::IdentityZ}, /*must_match_length=*/false);
  // Among equal-length minimal words, express the x-axis quarter turns by
  // Hadamard conjugation of a virtual quarter turn. This choice is load
  // bearing for the finite-duration gate statistics asserted in tests.
  const int xp = clifford_index_of(table, basis_gate_matrix(BasisGate::XPlus90));
  const int xm = clifford_index_of(table, basis_gate_matrix(BasisGate::XMinus90));
  if (xp < 0 || xm < 0) {
    throw std::logic_error("build_clifford_table: quarter turns missing");
  }
  override_word(table, table.hz_word, xp,
                {BasisGate::Hadamard, BasisGate::ZPlus90, BasisGate::Hadamard},
                /*must_match_length=*/true);
  override_word(table, table.hz_word, xm,
                {BasisGate::Hadamard, BasisGate::ZMinus90, BasisGate::Hadamard},
                /*must_match_length=*/true);

  for (int i = 0; i < 24; ++i) {
    if (phase_gauged_distance(word_matrix(table.xy_word[i]), table.matrix[i]) >
            kMatchTol ||
        phase_gauged_distance(word_matrix(table.hz_word[i]), table.matrix[i]) >
            kMatchTol) {
      throw std::logic_error("build_clifford_table: word/matrix mismatch");
    }
    table.xy_total_gates += static_cast<int>(table.xy_word[i].size());
    table.hz_total_gates += static_cast<int>(table.hz_word[i].size());
    for (BasisGate g : table.hz_word[i]) {
      if (is_finite_duration(g)) ++table.hz_total_hadamards;
    }
  }
  return table;
}

RbSequence rb_sequence(int m, std::uint64_t key, const CliffordTable& table) {
  RbSequence seq;
  seq.cliffords.reserve(static_cast<std::size_t>(m));
  int total = table.identity_index;
  for (int k = 0; k < m; ++k) {
    const int idx = static_cast<int>(uniform_index(counter_word(key, k), 24));
    seq.cliffords.push_back(idx);
    total = table.product[idx][total];
  }
  seq.recovery = table.inverse[total];
  return seq;
}

RbSequence interleave(const RbSequence& seq, int gate_index,
                      const CliffordTable& table) {
  RbSequence out;
  out.cliffords.reserve(seq.cliffords.size() * 2);
  int total = table.identity_index;
  for (int c : seq.cliffords) {
    out.cliffords.push_back(c);
    total = table.product[c][total];
    out.cliffords.push_back(gate_index);
    total = table.product[gate_index][total];
  }
  out.recovery = table.inverse[total];
  return out;
}

GateSchedule basis_gate_schedule(BasisGate g, const std::string& channel,
                                 double vz_correction) {
  // Emit (pre-VZ, pulse, post-VZ) with adjacent virtual rotations merged.
  double pre = 0.0, post = 0.0, gamma = 0.0;
  switch (g) {
    case BasisGate::XPlus90:
      gamma = 0.0;
      break;
    case BasisGate::XMinus90:
      gamma = pi;
      break;
    case BasisGate::YPlus90:
      gamma = pi / 2.0;
      break;
    case BasisGate::YMinus90:
      gamma = -pi / 2.0;
      break;
    case BasisGate::Hadamard:
      // Gate form z_rotation(pi/2) * x_rotation(pi/2) * z_rotation(pi/2);
      // each z stage is VZ(-pi/2).
      pre = -pi / 2.0;
      post = -pi / 2.0;
      gamma = 0.0;
      break;
    case BasisGate::IdentityZ:
      return {make_virtual_z(channel, 0.0)};
    case BasisGate::ZPlus90:
      return {make_virtual_z(channel, -pi / 2.0)};
    case BasisGate::ZMinus90:
      return {make_virtual_z(channel, pi / 2.0)};
    case BasisGate::ZPi:
      return {make_virtual_z(channel, -pi)};
  }
  GateSchedule ops;
  const double lead = pre + vz_correction;
  const double tail = post + vz_correction;
  if (lead != 0.0) ops.push_back(make_virtual_z(channel, lead));
  ops.push_back(make_pulse(channel, pi / 2.0, gamma));
  if (tail != 0.0) ops.push_back(make_virtual_z(channel, tail));
  return ops;
}

GateSchedule clifford_schedule(const CliffordTable& table, int index,
                               bool use_hz_basis, const std::string& channel,
                               double vz_correction) {
  if (index < 0 || index >= 24) {
    throw std::invalid_argument("clifford_schedule: index out of range");
  }
  const BasisWord& word =
      use_hz_basis ? table.hz_word[index] : table.xy_word[index];
  GateSchedule ops;
  for (BasisGate g : word) {
    GateSchedule part = basis_gate_schedule(g, channel, vz_correction);
    ops.insert(ops.end(), part.begin(), part.end());
  }
  return ops;
}

}  // namespace vzsim
