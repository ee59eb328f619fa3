#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"

namespace circlekit {

/// Hermitian Pauli operator on up to 64 qubits: sign times a tensor product
/// of I, X, Y, Z where qubit q carries X iff bit q of x, Z iff bit q of z,
/// and Y when both are set.
struct PauliOperator {
  int n = 0;
  Mask x = 0;
  Mask z = 0;
  bool negative = false;

  static PauliOperator identity(int n) { return PauliOperator{n, 0, 0, false}; }

  /// Parses strings such as "+XZIZ" or "-YI" (qubit 0 first; sign optional).
  static PauliOperator parse(std::string_view text) {
    PauliOperator p;
    std::size_t pos = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
      p.negative = text[0] == '-';
      pos = 1;
    }
    const std::size_t n = text.size() - pos;
    if (n > 64) throw ParseError("Pauli strings are limited to 64 qubits", pos + 64);
    p.n = static_cast<int>(n);
    for (std::size_t q = 0; q < n; ++q) {
      switch (text[pos + q]) {
        case 'I': case '_': break;
        case 'X': p.x |= bit(static_cast<int>(q)); break;
        case 'Z': p.z |= bit(static_cast<int>(q)); break;
        case 'Y':
          p.x |= bit(static_cast<int>(q));
          p.z |= bit(static_cast<int>(q));
          break;
        default: throw ParseError("invalid Pauli letter", pos + q);
      }
    }
    return p;
  }

  std::string to_string() const {
    std::string s(1, negative ? '-' : '+');
    for (int q = 0; q < n; ++q) {
      const bool xb = (x >> q) & 1U, zb = (z >> q) & 1U;
      s.push_back(xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
    }
    return s;
  }

  bool commutes_with(const PauliOperator& o) const {
    return (popcount(x & o.z) + popcount(z & o.x)) % 2 == 0;
  }

  friend bool operator==(const PauliOperator&, const PauliOperator&) = default;
};

namespace detail {

// Power of i picked up by the single-qubit product P1 * P2 (Aaronson-Gottesman).
inline int g_phase(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return static_cast<int>(z2) - static_cast<int>(x2);
  if (x1) return static_cast<int>(z2) * (2 * static_cast<int>(x2) - 1);
  return static_cast<int>(x2) * (1 - 2 * static_cast<int>(z2));
}

}  // namespace detail

/// Product a*b as i^phase times a Pauli string; phase in [0,4) includes the
/// operands' signs.
inline std::pair<PauliOperator, int> multiply(const PauliOperator& a, const PauliOperator& b) {
  int phase = (a.negative ? 2 : 0) + (b.negative ? 2 : 0);
  for_each_bit((a.x | a.z) & (b.x | b.z), [&](int q) {
    phase += detail::g_phase((a.x >> q) & 1U, (a.z >> q) & 1U, (b.x >> q) & 1U, (b.z >> q) & 1U);
  });
  phase = ((phase % 4) + 4) % 4;
  PauliOperator out{a.n, a.x ^ b.x, a.z ^ b.z, false};
  return {out, phase};
}

/// Product of commuting Hermitian Paulis (the result is Hermitian).
inline PauliOperator multiply_commuting(const PauliOperator& a, const PauliOperator& b) {
  auto [p, phase] = multiply(a, b);
  if (phase % 2 != 0) throw PreconditionError("operators anticommute");
  p.negative = phase == 2;
  return p;
}

/// n independent pairwise commuting generators.
class StabilizerTableau {
 public:
  StabilizerTableau() = default;
  StabilizerTableau(int n, std::vector<PauliOperator> rows) : n_(n), rows_(std::move(rows)) {
    if (n > 64) throw BoundExceededError("tableaux are limited to 64 qubits");
    for (const auto& r : rows_) {
      if (r.n != n) throw PreconditionError("row length differs from qubit count");
    }
  }

  int qubits() const { return n_; }
  const std::vector<PauliOperator>& rows() const { return rows_; }
  std::vector<PauliOperator>& rows() { return rows_; }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (const auto& r : rows_) out.push_back(r.to_string());
    return out;
  }

  bool rows_commute() const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = i + 1; j < rows_.size(); ++j)
        if (!rows_[i].commutes_with(rows_[j])) return false;
    return true;
  }

 private:
  int n_ = 0;
  std::vector<PauliOperator> rows_;
};

namespace detail {

// Bit `c` of the 2n-column symplectic vector: x columns first, then z.
inline bool column(const PauliOperator& p, int c, int n) {
  return c < n ? ((p.x >> c) & 1U) : ((p.z >> (c - n)) & 1U);
}

// Gaussian elimination on signed Paulis. Returns the reduced rows (fully
// reduced echelon form, zero rows dropped) and, for each, the set of input
// rows whose product it is.
struct Reduced {
  std::vector<PauliOperator> rows;
  std::vector<std::vector<std::size_t>> combos;
  std::vector<int> pivots;
};

inline Reduced reduce(const std::vector<PauliOperator>& input, int n) {
  Reduced r;
  std::vector<PauliOperator> rows = input;
  std::vector<std::vector<bool>> combo(rows.size(), std::vector<bool>(rows.size(), false));
  for (std::size_t i = 0; i < rows.size(); ++i) combo[i][i] = true;
  std::size_t next = 0;
  for (int c = 0; c < 2 * n && next < rows.size(); ++c) {
    std::size_t piv = next;
    while (piv < rows.size() && !column(rows[piv], c, n)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[next]);
    std::swap(combo[piv], combo[next]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != next && column(rows[i], c, n)) {
        rows[i] = multiply_commuting(rows[i], rows[next]);
        for (std::size_t k = 0; k < combo[i].size(); ++k) combo[i][k] = combo[i][k] != combo[next][k];
      }
    }
    r.pivots.push_back(c);
    ++next;
  }
  for (std::size_t i = 0; i < next; ++i) {
    r.rows.push_back(rows[i]);
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < combo[i].size(); ++k)
      if (combo[i][k]) members.push_back(k);
    r.combos.push_back(std::move(members));
  }
  return r;
}

}  // namespace detail

/// GF(2) rank of a list of Pauli operators (signs ignored).
inline int pauli_rank(const std::vector<PauliOperator>& ops, int n) {
  // Plain bit vectors, so non-commuting inputs are fine.
  std::vector<std::pair<Mask, Mask>> rows;
  for (const auto& p : ops) rows.emplace_back(p.x, p.z);
  int rank = 0;
  for (int c = 0; c < 2 * n; ++c) {
    auto has = [&](const std::pair<Mask, Mask>& r) {
      return c < n ? ((r.first >> c) & 1U) : ((r.second >> (c - n)) & 1U);
    };
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && !has(rows[piv])) ++piv;
    if (piv >= rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != static_cast<std::size_t>(rank) && has(rows[i])) {
        rows[i].first ^= rows[static_cast<std::size_t>(rank)].first;
        rows[i].second ^= rows[static_cast<std::size_t>(rank)].second;
      }
    }
    ++rank;
  }
  return rank;
}

/// Whether the tableau rows commute, are independent, and number n.
inline bool is_valid_tableau(const StabilizerTableau& t) {
  return static_cast<int>(t.rows().size()) == t.qubits() && t.rows_commute() &&
         pauli_rank(t.rows(), t.qubits()) == t.qubits();
}

/// Selects a maximal independent subset of commuting generators (first
/// occurrence wins) as a tableau.
inline StabilizerTableau tableau_from_generators(const std::vector<PauliOperator>& gens, int n) {
  std::vector<PauliOperator> chosen;
  for (const auto& g : gens) {
    chosen.push_back(g);
    if (pauli_rank(chosen, n) < static_cast<int>(chosen.size())) chosen.pop_back();
  }
  return StabilizerTableau(n, std::move(chosen));
}

/// Whether p is a product of the tableau rows with sign +.
inline bool is_stabilized(const StabilizerTableau& t, const PauliOperator& p) {
  if (p.n != t.qubits()) throw PreconditionError("operator length differs from qubit count");
  const int n = t.qubits();
  const auto red = detail::reduce(t.rows(), n);
  PauliOperator residue = p;
  residue.negative = false;
  std::vector<bool> use(t.rows().size(), false);
  for (std::size_t i = 0; i < red.rows.size(); ++i) {
    if (detail::column(residue, red.pivots[i], n)) {
      residue.x ^= red.rows[i].x;
      residue.z ^= red.rows[i].z;
      for (std::size_t k : red.combos[i]) use[k] = !use[k];
    }
  }
  if (residue.x != 0 || residue.z != 0) return false;
  PauliOperator acc = PauliOperator::identity(n);
  for (std::size_t k = 0; k < use.size(); ++k) {
    if (use[k]) acc = multiply_commuting(acc, t.rows()[k]);
  }
  return acc.x == p.x && acc.z == p.z && acc.negative == p.negative;
}

/// Fully reduced echelon form with signs; equal iff the groups are equal.
inline std::vector<PauliOperator> canonical_form(const StabilizerTableau& t) {
  return detail::reduce(t.rows(), t.qubits()).rows;
}

inline bool same_group(const StabilizerTableau& a, const StabilizerTableau& b) {
  return a.qubits() == b.qubits() && canonical_form(a) == canonical_form(b);
}

/// Row u is X_u Z_{N(u)} with sign +; qubit order follows the label order.
inline StabilizerTableau graph_state_tableau(const LabeledGraph& g) {
  std::vector<PauliOperator> rows;
  for (int u = 0; u < g.size(); ++u) rows.push_back(PauliOperator{g.size(), bit(u), g.row(u), false});
  return StabilizerTableau(g.size(), std::move(rows));
}

// ---------------------------------------------------------------------------
// Single-qubit Clifford conjugation

enum class Gate { X, Y, Z, H, S, Sdg };

inline const char* gate_name(Gate g) {
  switch (g) {
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::Sdg: return "Sdg";
  }
  return "?";
}

/// Replaces p by U p U^dagger for the gate U on qubit q.
inline void conjugate(PauliOperator& p, Gate gate, int q) {
  const bool xb = (p.x >> q) & 1U, zb = (p.z >> q) & 1U;
  switch (gate) {
    case Gate::X: p.negative ^= zb; break;
    case Gate::Z: p.negative ^= xb; break;
    case Gate::Y: p.negative ^= (xb != zb); break;
    case Gate::H:
      p.negative ^= (xb && zb);
      if (xb != zb) {
        p.x ^= bit(q);
        p.z ^= bit(q);
      }
      break;
    case Gate::S:  // X -> Y, Y -> -X
      p.negative ^= (xb && zb);
      if (xb) p.z ^= bit(q);
      break;
    case Gate::Sdg:  // X -> -Y, Y -> X
      p.negative ^= (xb && !zb);
      if (xb) p.z ^= bit(q);
      break;
  }
}

inline StabilizerTableau apply_gate(StabilizerTableau t, Gate gate, int q) {
  for (auto& r : t.rows()) conjugate(r, gate, q);
  return t;
}

/// Conjugates every row by Hadamards on the qubits in `a`.
inline StabilizerTableau apply_hadamards(StabilizerTableau t, Mask a) {
  for (auto& r : t.rows()) for_each_bit(a, [&](int q) { conjugate(r, Gate::H, q); });
  return t;
}

// ---------------------------------------------------------------------------
// LC-equivalence

/// Whether g2 lies in the LC orbit of g1 (same vertex labels required).
inline bool lc_equivalent(const LabeledGraph& g1, const LabeledGraph& g2,
                          std::size_t cap = kDefaultOrbitCap) {
  if (g1.size() != g2.size()) return false;
  for (Vertex v : g2.labels())
    if (!g1.contains(v)) return false;
  const GraphKey target = key_of(g2.reordered(g1.labels()));
  if (key_of(g1) == target) return true;
  // Orbit BFS with early exit.
  std::vector<LabeledGraph> order{g1};
  GraphKeySet seen{key_of(g1)};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const LabeledGraph cur = order[head];
    for (int u = 0; u < cur.size(); ++u) {
      if (popcount(cur.row(u)) < 2) continue;
      LabeledGraph next = cur;
      local_complement_at(next, u);
      GraphKey k = key_of(next);
      if (k == target) return true;
      if (seen.insert(std::move(k)).second) {
        if (order.size() >= cap) {
          throw OrbitOverflowError("LC orbit exceeds cap of " + std::to_string(cap) + " graphs");
        }
        order.push_back(std::move(next));
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Pauli measurement rewrites

enum class Basis { X, Y, Z };

inline char basis_name(Basis b) { return b == Basis::X ? 'X' : b == Basis::Y ? 'Y' : 'Z'; }

struct CorrectionGate {
  Vertex qubit;
  Gate gate;
  friend bool operator==(const CorrectionGate&, const CorrectionGate&) = default;
};

/// Post-measurement (+1 branch) description: the state on the remaining
/// qubits equals the gates of `correction`, applied in order, acting on the
/// graph state of `graph`, up to global phase.
struct MeasurementResult {
  LabeledGraph graph;
  std::vector<CorrectionGate> correction;
};

inline MeasurementResult measure_pauli(const LabeledGraph& g, Vertex v, Basis basis) {
  const int a = g.index_of(v);
  MeasurementResult out;
  switch (basis) {
    case Basis::Z:
      out.graph = delete_vertex(g, v);
      break;
    case Basis::Y: {
      LabeledGraph h = g;
      local_complement_at(h, a);
      out.graph = delete_vertex(h, v);
      for (Vertex b : g.neighbors(v)) out.correction.push_back({b, Gate::S});
      break;
    }
    case Basis::X: {
      if (g.row(a) == 0) {
        out.graph = delete_vertex(g, v);
        break;
      }
      // Lowest-labeled neighbor as the pivot partner.
      std::vector<Vertex> nbrs = g.neighbors(v);
      const Vertex b0 = *std::min_element(nbrs.begin(), nbrs.end());
      const int b = g.index_of(b0);
      LabeledGraph h = g;
      pivot_at(h, a, b);
      out.graph = delete_vertex(h, v);
      out.correction.push_back({b0, Gate::H});
      out.correction.push_back({b0, Gate::Z});
      for_each_bit(g.row(a) & ~g.row(b) & ~bit(b),
                   [&](int c) { out.correction.push_back({g.label(c), Gate::Z}); });
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frame-tracked measurement sequences
//
// The state is U|G> with U a product of per-qubit gate words. Measuring a
// physical Pauli P on qubit a of U|G> is measuring U_a^dagger P U_a on |G>.

struct PauliFrame {
  std::map<Vertex, std::vector<Gate>> words;  // application order per qubit

  /// The Pauli U_q^dagger P U_q (up to sign) seen by the graph state.
  Basis effective_basis(Vertex q, Basis physical) const {
    PauliOperator p = PauliOperator::identity(1);
    if (physical != Basis::Z) p.x = 1;
    if (physical != Basis::X) p.z = 1;
    auto it = words.find(q);
    if (it != words.end()) {
      // U = g_k ... g_1 with g_1 applied first, so U^dagger P U conjugates
      // by g_k^dagger first.
      for (auto gi = it->second.rbegin(); gi != it->second.rend(); ++gi) {
        conjugate(p, inverse(*gi), 0);
      }
    }
    if (p.x && p.z) return Basis::Y;
    return p.x ? Basis::X : Basis::Z;
  }

  /// New state U V |G'> for a correction V: V's gates run first.
  void absorb(const std::vector<CorrectionGate>& v) {
    std::map<Vertex, std::vector<Gate>> fresh;
    for (const auto& c : v) fresh[c.qubit].push_back(c.gate);
    for (auto& [q, gates] : fresh) {
      auto& w = words[q];
      w.insert(w.begin(), gates.begin(), gates.end());
    }
  }

  static Gate inverse(Gate g) {
    if (g == Gate::S) return Gate::Sdg;
    if (g == Gate::Sdg) return Gate::S;
    return g;
  }
};

struct SequenceResult {
  LabeledGraph graph;
  PauliFrame frame;
  std::vector<std::pair<Vertex, Basis>> effective;  // basis applied to the graph
};

/// Measures the listed qubits in order, each in the physical basis `basis`,
/// following the +1 branch of the effective graph-level measurement.
inline SequenceResult measure_sequence(const LabeledGraph& g, std::span<const Vertex> qubits,
                                       Basis basis, PauliFrame frame = {}) {
  SequenceResult out{g, std::move(frame), {}};
  for (Vertex q : qubits) {
    const Basis eff = out.frame.effective_basis(q, basis);
    out.effective.emplace_back(q, eff);
    auto m = measure_pauli(out.graph, q, eff);
    out.graph = std::move(m.graph);
    out.frame.words.erase(q);
    out.frame.absorb(m.correction);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact statevector oracle over the Gaussian integers. Global scalars
// (powers of sqrt 2) are dropped; states are compared as rays.

struct GaussInt {
  long long re = 0;
  long long im = 0;
  friend GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(GaussInt, GaussInt) = default;
  bool zero() const { return re == 0 && im == 0; }
};

inline constexpr int kOracleMaxQubits = 12;

/// Amplitudes of |G> scaled by 2^(n/2): entry x is (-1)^(edges inside x).
/// Bit q of the index is the qubit at label index q.
inline std::vector<GaussInt> statevector_oracle(const LabeledGraph& g) {
  if (g.size() > kOracleMaxQubits) {
    throw BoundExceededError("statevector oracle is limited to " + std::to_string(kOracleMaxQubits) +
                             " qubits");
  }
  const std::size_t dim = std::size_t{1} << g.size();
  std::vector<GaussInt> psi(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    int edges = 0;
    for_each_bit(static_cast<Mask>(x), [&](int u) { edges += popcount(g.row(u) & static_cast<Mask>(x)); });
    psi[x] = GaussInt{(edges / 2) % 2 == 0 ? 1 : -1, 0};
  }
  return psi;
}

/// Applies a single-qubit gate (unnormalized H) to qubit q.
inline void apply_gate_dense(std::vector<GaussInt>& psi, Gate gate, int q) {
  const std::size_t m = std::size_t{1} << q;
  for (std::size_t x = 0; x < psi.size(); ++x) {
    if (x & m) continue;
    const GaussInt a0 = psi[x], a1 = psi[x | m];
    switch (gate) {
      case Gate::X: psi[x] = a1; psi[x | m] = a0; break;
      case Gate::Y: psi[x] = GaussInt{0, -1} * a1; psi[x | m] = GaussInt{0, 1} * a0; break;
      case Gate::Z: psi[x | m] = GaussInt{0, 0} - a1; break;
      case Gate::H: psi[x] = a0 + a1; psi[x | m] = a0 - a1; break;
      case Gate::S: psi[x | m] = GaussInt{0, 1} * a1; break;
      case Gate::Sdg: psi[x | m] = GaussInt{0, -1} * a1; break;
    }
  }
}

/// (I + P_q) psi for the Pauli P in `basis` on qubit q.
inline void project_plus(std::vector<GaussInt>& psi, Basis basis, int q) {
  std::vector<GaussInt> p = psi;
  apply_gate_dense(p, basis == Basis::X ? Gate::X : basis == Basis::Y ? Gate::Y : Gate::Z, q);
  for (std::size_t x = 0; x < psi.size(); ++x) psi[x] = psi[x] + p[x];
}

/// The slice with qubit q set to 0, as a state on the other qubits.
inline std::vector<GaussInt> slice_zero(const std::vector<GaussInt>& psi, int q) {
  std::vector<GaussInt> out;
  out.reserve(psi.size() / 2);
  const std::size_t m = std::size_t{1} << q;
  for (std::size_t x = 0; x < psi.size(); ++x) {
    if (!(x & m)) out.push_back(psi[x]);
  }
  return out;
}

/// Equal up to a nonzero scalar.
inline bool same_ray(const std::vector<GaussInt>& a, const std::vector<GaussInt>& b) {
  if (a.size() != b.size()) return false;
  std::size_t i0 = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!b[i].zero()) {
      i0 = i;
      break;
    }
  }
  if (i0 == a.size() || a[i0].zero()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] * b[i0] == b[i] * a[i0])) return false;
  }
  return true;
}

/// Dense +1-branch state after measuring label v of g in `basis`, with the
/// measured qubit removed.
inline std::vector<GaussInt> measured_statevector(const LabeledGraph& g, Vertex v, Basis basis) {
  auto psi = statevector_oracle(g);
  const int q = g.index_of(v);
  project_plus(psi, basis, q);
  return slice_zero(psi, q);
}

/// Dense state of the correction word applied to |graph>.
inline std::vector<GaussInt> corrected_statevector(const MeasurementResult& m) {
  auto psi = statevector_oracle(m.graph);
  for (const auto& c : m.correction) apply_gate_dense(psi, c.gate, m.graph.index_of(c.qubit));
  return psi;
}

/// Checks a measurement rewrite against the dense oracle.
inline bool measurement_matches_oracle(const LabeledGraph& g, Vertex v, Basis basis) {
  return same_ray(measured_statevector(g, v, basis), corrected_statevector(measure_pauli(g, v, basis)));
}

/// Applies every row of the tableau to the dense vector and checks it is a
/// +1 eigenvector.
inline bool is_eigenvector(const std::vector<GaussInt>& psi, const PauliOperator& p) {
  std::vector<GaussInt> out = psi;
  for (int q = 0; q < p.n; ++q) {
    const bool xb = (p.x >> q) & 1U, zb = (p.z >> q) & 1U;
    if (xb && zb) apply_gate_dense(out, Gate::Y, q);
    else if (xb) apply_gate_dense(out, Gate::X, q);
    else if (zb) apply_gate_dense(out, Gate::Z, q);
  }
  if (p.negative) {
    for (auto& a : out) a = GaussInt{0, 0} - a;
  }
  return out == psi;
}

}  // namespace circlekit
