#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hardy::cli {

struct Preset {
  std::string_view name;
  std::string_view json;
};

inline const std::vector<Preset>& presets() {
  static const std::vector<Preset> table{
      {"counterexample", R"({
  "name": "counterexample",
  "statement": "For phi(z) = (0, z1) the composition operator is an isometry on span{z2^s} yet Phi(C_phi) = 0, so C_phi is uniformly asymptotically Toeplitz with symbol zero.",
  "dimension": 2,
  "truncation": 8,
  "mode": "uniform",
  "maps": {"phi": {"components": [[], [[[1, 0], 1]]]}},
  "operator": {"op": "compose", "args": ["phi"]},
  "params": {"m_max": 4},
  "expect": "converges-to-zero"
})"},
      {"linear-uat", R"({
  "name": "linear-uat",
  "statement": "A linear self-map whose matrix has all eigenvalues inside the unit disc gives a uniformly asymptotically Toeplitz composition operator, with ||Phi^m(C_phi)|| bounded by sup|<Az, z>|^m ||C_phi||.",
  "dimension": 2,
  "truncation": 10,
  "mode": "uniform",
  "maps": {"phi": {"matrix": [[{"num": 1, "den": 2}, 0], [0, {"num": 1, "den": 3}]]}},
  "operator": {"op": "compose", "args": ["phi"]},
  "params": {"m_max": 6, "sup_samples": 100000},
  "expect": "converges-to-zero"
})"},
      {"linear-non-uat", R"({
  "name": "linear-non-uat",
  "statement": "A contraction with a unimodular eigenvalue gives a composition operator that is not uniformly asymptotically Toeplitz: ||Phi^m(C_phi)|| stays bounded below by test-function ratios built from the eigenvector.",
  "dimension": 2,
  "truncation": 10,
  "mode": "uniform",
  "maps": {"phi": {"matrix": [[1, 0], [0, {"num": 1, "den": 2}]]}},
  "operator": {"op": "compose", "args": ["phi"]},
  "params": {"m_max": 6, "s_max": 24, "sup_samples": 100000},
  "expect": "non-convergent"
})"},
      {"davie-jewell", R"({
  "name": "davie-jewell",
  "statement": "An operator on H^2 of the ball is a Toeplitz operator if and only if it is a fixed point of Phi(A) = sum_j T_{conj z_j} A T_{z_j}.",
  "dimension": 2,
  "truncation": 10,
  "mode": "fixed-point",
  "symbols": {"f": {"random": {"hol": 2, "anti": 2, "terms": 6}}},
  "operator": {"op": "toeplitz", "args": ["f"]},
  "params": {"m_max": 4},
  "expect": "converges-to-toeplitz"
})"},
      {"induction-formula", R"({
  "name": "induction-formula",
  "statement": "For self-maps phi, eta and a symbol g, Phi^m(C_eta^* T_g C_phi) = C_eta^* T_{g <phi, eta>^m} C_phi for every m.",
  "dimension": 2,
  "truncation": 10,
  "mode": "induction",
  "maps": {
    "phi": {"matrix": [[{"num": 1, "den": 2}, {"num": 1, "den": 3}], [0, {"num": 1, "den": 4}]]},
    "eta": {"matrix": [[{"num": 1, "den": 3}, 0], [{"num": 1, "den": 5}, {"num": 1, "den": 2}]]}
  },
  "symbols": {"g": [[[1, 0], [0, 1], 1, 0], [[0, 0], [1, 1], {"num": 1, "den": 2}, 0], [[2, 0], [0, 0], 0, {"num": -1, "den": 3}], [[0, 0], [0, 0], 2, 0]]},
  "operator": {"op": "product", "args": [
    {"op": "adjoint", "args": [{"op": "compose", "args": ["eta"]}]},
    {"op": "toeplitz", "args": ["g"]},
    {"op": "compose", "args": ["phi"]}
  ]},
  "params": {"m_max": 3, "phi": "phi", "eta": "eta", "g": "g"}
})"},
      {"cesaro-msat", R"({
  "name": "cesaro-msat",
  "statement": "If Phi^j(A) = lambda^j A with |lambda| = 1 and lambda != 1, the Cesaro means of Phi^j(A) tend to zero, so A is MSAT with asymptotic symbol zero; here A = C_phi for phi(z) = lambda z.",
  "dimension": 2,
  "truncation": 10,
  "mode": "cesaro",
  "maps": {"phi": {"matrix": [[{"polar": {"turns": {"num": 1, "den": 6}}}, 0], [0, {"polar": {"turns": {"num": 1, "den": 6}}}]]}},
  "operator": {"op": "compose", "args": ["phi"]},
  "params": {"m_max": 6},
  "expect": "converges-to-zero"
})"},
      {"inner-1d", R"({
  "name": "inner-1d",
  "statement": "On the unit disc, for phi(z) = z^2 the composition operator C_phi is not strongly asymptotically Toeplitz while its adjoint is.",
  "dimension": 1,
  "truncation": 16,
  "mode": "strong",
  "maps": {"phi": {"components": [[[[2], 1]]]}},
  "operator": {"op": "compose", "args": ["phi"]},
  "params": {
    "m_max": 8,
    "adjoint_probe": true,
    "kernel_decay": {"point": [{"num": 1, "den": 2}], "factor": {"num": 101, "den": 100}}
  },
  "expect": "non-convergent"
})"},
      {"compact-uat", R"({
  "name": "compact-uat",
  "statement": "A compact perturbation does not change the uniform Toeplitz limit: for finite-rank K, Phi^m(K) = 0 once m exceeds the degree of its polynomial data, so T_f + K converges to T_f.",
  "dimension": 2,
  "truncation": 10,
  "mode": "uniform",
  "symbols": {"f": [[[1, 0], [0, 1], 1, 0], [[0, 0], [0, 0], {"num": 1, "den": 2}, 0]]},
  "vectors": {"u": [[[0, 0], 1], [[1, 0], 1]], "v": [[[0, 2], 1]]},
  "operator": {"op": "sum", "args": [
    {"op": "toeplitz", "args": ["f"]},
    {"op": "rank_one", "args": ["u", "v"]}
  ]},
  "params": {"m_max": 6},
  "expect": "converges-to-toeplitz"
})"},
      {"norm-lower-bound", R"({
  "name": "norm-lower-bound",
  "statement": "If <phi(z), eta> = <z, zeta> with zeta on the sphere, rotation invariance of surface measure gives ||T_f C_phi|| >= |f(zeta)| through the test functions (1 + <z, eta>)^s.",
  "dimension": 2,
  "truncation": 10,
  "mode": "lower-bound",
  "maps": {"phi": {"matrix": [[{"polar": {"turns": {"num": 1, "den": 8}}}, 0], [0, {"polar": {"turns": {"num": 1, "den": 8}}}]]}},
  "symbols": {"f": [[[1, 0], [1, 0], 1, 0]]},
  "params": {
    "symbol": "f",
    "map": "phi",
    "zeta": [1, 0],
    "eta": [{"polar": {"turns": {"num": 1, "den": 8}}}, 0],
    "s_max": 12
  },
  "expect": "pass"
})"},
      {"frame-invariance", R"({
  "name": "frame-invariance",
  "statement": "Phi does not depend on the orthonormal frame: sum_j T_{conj f_j} A T_{f_j} with f_j(z) = <z, u_j> equals Phi(A) for every unitary U.",
  "dimension": 2,
  "truncation": 8,
  "mode": "frame-invariance",
  "symbols": {"f": {"random": {"hol": 2, "anti": 2, "terms": 5}}},
  "maps": {"phi": {"matrix": [[{"num": 1, "den": 2}, {"num": 1, "den": 4}], [{"num": -1, "den": 3}, {"num": 1, "den": 5}]]}},
  "operator": {"op": "sum", "args": [
    {"op": "toeplitz", "args": ["f"]},
    {"op": "compose", "args": ["phi"]}
  ]},
  "params": {"unitaries": 5, "tolerance": 1e-10},
  "expect": "pass"
})"},
      {"oracle-validate", R"({
  "name": "oracle-validate",
  "statement": "Closed-form monomial norms alpha! (n-1)! / (n-1+|alpha|)! and exact Toeplitz matrix entries agree with Monte Carlo integration over the sphere.",
  "dimension": 2,
  "truncation": 4,
  "mode": "oracle-validate",
  "params": {"N": 1000000, "weight_degree": 4, "entries": 30, "z_max": 4},
  "expect": "pass"
})"},
  };
  return table;
}

inline std::optional<std::string_view> find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p.json;
  return std::nullopt;
}

}  // namespace hardy::cli
