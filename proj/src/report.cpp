#include "jtower/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace jtower {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "unknown";
}

CheckResult& Report::add(std::string id, Status status, std::string reason, nlohmann::json witness) {
  CheckResult r;
  r.anchor = anchor_for(id);
  r.id = std::move(id);
  r.status = status;
  r.reason = std::move(reason);
  r.witness = std::move(witness);
  results_.push_back(std::move(r));
  return results_.back();
}

CheckResult& Report::pass(std::string id, nlohmann::json witness) {
  return add(std::move(id), Status::pass, {}, std::move(witness));
}

CheckResult& Report::fail(std::string id, std::string reason, nlohmann::json witness) {
  return add(std::move(id), Status::fail, std::move(reason), std::move(witness));
}

CheckResult& Report::skip(std::string id, std::string reason) {
  return add(std::move(id), Status::skipped, std::move(reason));
}

CheckResult& Report::check(std::string id, bool ok, std::string reason_if_failed, nlohmann::json witness) {
  if (ok) return pass(std::move(id), std::move(witness));
  return fail(std::move(id), std::move(reason_if_failed), std::move(witness));
}

void Report::append(const Report& other) {
  results_.insert(results_.end(), other.results_.begin(), other.results_.end());
}

const CheckResult* Report::find(std::string_view id) const {
  for (const auto& r : results_)
    if (r.id == id) return &r;
  return nullptr;
}

std::optional<Status> Report::status(std::string_view id) const {
  if (const auto* r = find(id)) return r->status;
  return std::nullopt;
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(results_.begin(), results_.end(), [s](const CheckResult& r) { return r.status == s; }));
}

nlohmann::json Report::to_json(bool with_timing) const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : results_) {
    nlohmann::json j;
    j["id"] = r.id;
    j["anchor"] = r.anchor;
    j["status"] = to_string(r.status);
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (!r.witness.is_null()) j["witness"] = r.witness;
    if (with_timing) j["seconds"] = r.seconds;
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

std::vector<std::pair<std::string, std::string>> build_registry() {
  return {
      // input and algebra layer
      {"input", "input validation: algebra table, unital embedding, map shapes"},
      {"algebra", "associativity and two-sided unit on all basis triples"},
      // Frobenius systems
      {"frobenius.conditional_expectation", "E(n m n') = n E(m) n' for n, n' in N, with E(1) = 1"},
      {"frobenius.conditional_expectation.bimodule", "E is an N-N-bimodule map: E(n m n') = n E(m) n'"},
      {"frobenius.conditional_expectation.normalized", "normalization E(1) = 1"},
      {"frobenius.dual_bases", "dual-basis equations: sum_i E(m x_i) y_i = m = sum_i x_i E(y_i m)"},
      {"frobenius.dual_bases.unique", "the dual-bases tensor is unique as an element of M (x)_N M"},
      {"frobenius.index", "index [M:N]_E = sum_i x_i y_i is central in M"},
      {"frobenius.index.scalar", "index sum_i x_i y_i = lambda^{-1} 1 with lambda^{-1} nonzero"},
      {"frobenius.e1_commutes", "E(1) commutes with N"},
      {"frobenius.classification", "hypothesis flags: split, separable, strongly separable, irreducible, normalized"},
      {"frobenius.normalize", "rescaling E by E(1)^{-1} and x_i by E(1) gives a normalized Frobenius system"},
      {"frobenius.nakayama", "Nakayama automorphism q: E(q(c) m) = E(m c), q an automorphism of C_M(N)"},
      {"frobenius.compose", "transitivity: E o F with dual bases {z_j x_i}, {y_i w_j}"},
      {"frobenius.compose.lagrange", "Lagrange equation [R:N]_{EF} = [R:M]_F [M:N]_E"},
      {"frobenius.separability", "separability element e: mu(e) = 1 and m e = e m"},
      // tower
      {"tower", "basic construction M_1 = M (x)_N M with E-multiplication"},
      {"tower.l1.algebra", "E-multiplication (m1 (x) m2)(m3 (x) m4) = m1 E(m2 m3) (x) m4 is associative and unital"},
      {"tower.l1.unit", "unity of M_1 is 1_1 = sum_i x_i (x) y_i"},
      {"tower.l1.idempotent", "Jones idempotent e_1 = 1 (x) 1 satisfies e_1^2 = e_1"},
      {"tower.l1.inclusion", "m -> m 1_1 is a unital algebra monomorphism M -> M_1"},
      {"tower.l1.conditional_expectation", "E_M = lambda mu is a conditional expectation M_1 -> M"},
      {"tower.l1.dual_bases", "E_M has dual bases {lambda^{-1} x_i (x) 1}, {1 (x) y_i}"},
      {"tower.l1.index", "index of M_1/M equals lambda^{-1} 1"},
      {"tower.l1.endomorphism_ring", "f -> sum_i f(x_i) (x) y_i is an algebra isomorphism End(M_N) -> M_1"},
      {"tower.l1.endomorphism_inverse", "inverse m (x) n -> lambda_m E lambda_n of the endomorphism ring map"},
      {"tower.l1.cyclic", "M_1 = span{x e_1 y : x, y in M}"},
      {"tower.l2.cyclic", "M_2 = span{x e_2 y : x, y in M_1}"},
      {"tower.l1.expectation_of_e", "E_M(e_1) = lambda 1"},
      {"tower.l2.algebra", "M_2 = M_1 (x)_M M_1 with E_M-multiplication is associative and unital"},
      {"tower.l2.unit", "unity of M_2 is the dual-bases tensor of E_M"},
      {"tower.l2.idempotent", "Jones idempotent e_2 = 1_1 (x) 1_1 satisfies e_2^2 = e_2"},
      {"tower.l2.inclusion", "x -> x 1_2 is a unital algebra monomorphism M_1 -> M_2"},
      {"tower.l2.conditional_expectation", "E_{M_1} is a conditional expectation M_2 -> M_1"},
      {"tower.l2.dual_bases", "E_{M_1} satisfies the dual-basis equations at level 2"},
      {"tower.l2.index", "index of M_2/M_1 equals lambda^{-1} 1"},
      {"tower.l2.endomorphism_ring", "End(M_1 over M) is isomorphic to M_2 via f -> sum f(x_i) (x) y_i"},
      {"tower.l2.endomorphism_inverse", "inverse m (x) n -> lambda_m E_M lambda_n at level 2"},
      {"tower.l2.expectation_of_e", "E_{M_1}(e_2) = lambda 1"},
      {"tower.l2.triple_tensor", "M_2 = M_1 (x)_M M_1 is isomorphic to M (x)_N M (x)_N M, E_{M_1}(m1 (x) m2 (x) m3) = lambda m1 E(m2) (x) m3"},
      {"tower.braid.e1e2e1", "braid-like relation e_1 e_2 e_1 = lambda e_1"},
      {"tower.braid.e2e1e2", "braid-like relation e_2 e_1 e_2 = lambda e_2"},
      {"tower.markov", "F(e_2) = lambda 1 and F(e_2 e_1) = lambda^2 1 for F = E_M o E_{M_1}"},
      {"tower.pimsner_popa.l1", "Pimsner-Popa identity lambda^{-1} e_1 E_M(e_1 x) = e_1 x for x in M_1"},
      {"tower.pimsner_popa.l1_opposite", "opposite Pimsner-Popa identity lambda^{-1} E_M(x e_1) e_1 = x e_1"},
      {"tower.pimsner_popa.l2", "Pimsner-Popa identity lambda^{-1} e_2 E_{M_1}(e_2 y) = e_2 y for y in M_2"},
      {"tower.pimsner_popa.l2_opposite", "opposite Pimsner-Popa identity lambda^{-1} E_{M_1}(y e_2) e_2 = y e_2"},
      // depth two
      {"depth2", "depth-2 analysis of the tower"},
      {"depth2.centralizers", "second centralizers A = C_{M_1}(N), B = C_{M_2}(M), C = C_{M_2}(N)"},
      {"depth2.level1", "orthogonal dual bases for E_M in A: sum_i E_M(x z_i) w_i = x, E_M(w_i z_j) = delta_ij"},
      {"depth2.level2", "orthogonal dual bases for E_{M_1} in B: sum_j E_{M_1}(y u_j) v_j = y, E_{M_1}(v_i u_j) = delta_ij"},
      {"depth2.level1.second_equation", "second dual-basis equation sum_i z_i E_M(w_i x) = x"},
      {"depth2.level2.second_equation", "second dual-basis equation sum_j u_j E_{M_1}(v_j y) = y"},
      {"depth2.level1.resolve", "independent re-solve of the level-1 orthogonal dual-basis system agrees"},
      {"depth2.level2.resolve", "independent re-solve of the level-2 orthogonal dual-basis system agrees"},
      {"depth2.level1.multiplicity", "bimodule multiplicity test dim A = r dim C_M(N), dim C = r^2 dim C_M(N)"},
      {"depth2.level2.multiplicity", "bimodule multiplicity test dim B = r dim C_{M_1}(M), dim C_{M_2}(M) count"},
      {"depth2.level1.free", "m (x) a -> m a is a bijection M (x) A -> M_1"},
      {"depth2.level2.free", "x (x) b -> x b is a bijection M_1 (x) B -> M_2"},
      {"depth2.separable", "lambda sum z_i (x) w_i and lambda sum u_j (x) v_j are separability elements of A and B"},
      {"depth2.C", "structure of C = C_{M_2}(N)"},
      {"depth2.C.AB", "multiplication A (x) B -> C, a (x) b -> ab, is bijective"},
      {"depth2.C.BA", "multiplication B (x) A -> C, b (x) a -> ba, is bijective"},
      {"depth2.C.e2A", "e_2 A = e_2 C and A e_2 = C e_2"},
      {"depth2.C.AeA", "C = A e_2 A"},
      {"depth2.C.e1ce1", "e_1 c e_1 = e_1 E_{M_1}(c) for c in C"},
      {"depth2.C.matrix", "C is a full matrix algebra M_n(k) with n = dim B"},
      {"depth2.C.dims", "dim A = dim B"},
      {"depth2.C.characteristic", "lambda^{-1} = n 1_k is nonzero"},
      {"depth2.expectations", "conditional expectations E_A and E_B on C"},
      {"depth2.expectations.EB", "E_B(c) = sum_j F(c u_j) v_j is a conditional expectation C -> B"},
      {"depth2.expectations.EB_e1", "E_B(b e_1 b') = lambda b b'"},
      {"depth2.expectations.EA", "E_A = E_{M_1} restricted to C is a conditional expectation C -> A"},
      {"depth2.expectations.F_invariance", "F o E_{M_1} = F and F o E_B = F on C"},
      {"depth2.markov", "Markov relations F(a e_2) = F(e_2 a) = lambda F(a), F(b e_1) = F(e_1 b) = lambda F(b)"},
      {"depth2.F_scalar", "F maps C into k 1"},
      {"depth2.F_faithful", "F = E_M o E_{M_1} is a faithful functional on C"},
      {"depth2.nakayama", "Nakayama relations q|_A = q_A, q|_B = q_B, E_{M_1} q = q_A E_{M_1}"},
      {"depth2.nakayama.q_e", "q(e_1) = e_1 and q(e_2) = e_2"},
      // Hopf reconstruction
      {"hopf", "Hopf algebra reconstruction from the tower"},
      {"hopf.pairing", "pairing <a, b> = lambda^{-2} F(a e_2 e_1 b) is non-degenerate on A (x) B"},
      {"hopf.pairing.bijection", "b -> E_{M_1}(e_2 e_1 b) is a linear isomorphism B -> A"},
      {"hopf.coproduct.defining", "<a, b_(1)> <a', b_(2)> = <a a', b>"},
      {"hopf.counit.cross_check", "epsilon(b) = <1, b> = lambda^{-1} F(b e_2)"},
      {"hopf.antipode.definition", "E_{M_1}(b e_1 e_2) = E_{M_1}(e_2 e_1 S(b))"},
      {"hopf.antipode.remark", "E_{M_1}(b x e_2) = E_{M_1}(e_2 x S(b)) for x in M_1"},
      {"hopf.antipode.bijective", "S is bijective"},
      {"hopf.axioms", "Hopf algebra axioms"},
      {"hopf.axioms.coassociative", "(Delta (x) id) Delta = (id (x) Delta) Delta"},
      {"hopf.axioms.counit", "(epsilon (x) id) Delta = id = (id (x) epsilon) Delta"},
      {"hopf.axioms.delta_multiplicative", "Delta is an algebra homomorphism, Delta(1) = 1 (x) 1"},
      {"hopf.axioms.epsilon_multiplicative", "epsilon(b b') = epsilon(b) epsilon(b'), epsilon(1) = 1"},
      {"hopf.axioms.antipode", "S(b_(1)) b_(2) = epsilon(b) 1 = b_(1) S(b_(2))"},
      {"hopf.axioms.anti_coalgebra", "S is a coalgebra anti-morphism: Delta S = (S (x) S) tau Delta, epsilon S = epsilon"},
      {"hopf.axioms.anti_algebra", "S(b b') = S(b') S(b)"},
      {"hopf.axioms.S_squared", "S^2 = id"},
      {"hopf.axioms.integral", "integral t: h t = epsilon(h) t = t h"},
      {"hopf.S_squared_nakayama", "S^2 = q|_B^{-1}"},
      {"hopf.exchange", "exchange relation y b = lambda^{-1} b_(2) E_{M_1}(e_2 y b_(1))"},
      {"hopf.action_identity", "E_{M_1}(e_2 x y b) = lambda^{-1} E_{M_1}(e_2 x b_(2)) E_{M_1}(e_2 y b_(1))"},
      {"hopf.left_action_identity", "E_{M_1}(b x y e_2) = lambda^{-1} E_{M_1}(b_(1) x e_2) E_{M_1}(b_(2) y e_2)"},
      {"hopf.central_idempotents", "e_1 is central in A and e_2 is central in B"},
      {"hopf.e2_integral", "e_2 b = epsilon(b) e_2: e_2 is an integral in B"},
      {"hopf.dual", "A is the Hopf algebra dual to B through the pairing"},
      {"hopf.dual.pairing_coproduct", "<a, b b'> = <a_(1), b> <a_(2), b'>"},
      {"hopf.dual.e1_integral", "e_1 is an integral in A"},
      {"hopf.dual.e1_counit", "epsilon_A(e_1) = 1"},
      {"hopf.dual.e1_absorbs", "e_1 a = epsilon_A(a) e_1"},
      {"hopf.basis_independence", "Delta does not depend on the chosen basis of A"},
      // Galois and smash products
      {"galois", "Galois, smash product and module-algebra checks"},
      {"galois.action_B", "b |> x = lambda^{-1} E_{M_1}(b x e_2) is a module-algebra action of B on M_1"},
      {"galois.action_B.outer", "b |> x = b_(1) x S(b_(2))"},
      {"galois.action_B.e2", "e_2 |> x = E_M(x)"},
      {"galois.invariants_B", "M_1^B = M"},
      {"galois.smash_theta", "theta: x # b -> x b is an algebra isomorphism M_1 # B -> M_2"},
      {"galois.smash_AB", "A # B is isomorphic to C"},
      {"galois.action_A", "a |> m = a_(1) m S(a_(2)) is a module-algebra action of A on M"},
      {"galois.action_A.e1", "e_1 |> x = E(x) for x in M"},
      {"galois.invariants_A", "M^A = N"},
      {"galois.cleft.comodule", "inclusion A -> M_1 is a comodule map for the coaction rho(w) = sum_j (b_j |> w) (x) a^j"},
      {"galois.cleft.convolution_inverse", "the convolution inverse of the inclusion is the inclusion composed with S_A"},
      {"galois.cleft.cocycle", "cocycle sigma(a, a') = a_(1) a'_(1) S(a_(2) a'_(2)) = epsilon(a) epsilon(a') 1"},
      {"galois.smash_MA", "m # a -> m a is an algebra isomorphism M # A -> M_1"},
      {"galois.galois_map", "Galois map beta: M (x)_N M -> M (x) H*, a (x) a' -> a a'_(0) (x) a'_(1) is bijective"},
      {"galois.psi", "Psi: X # H -> End(X_N), x # h -> x (h |> -) is an algebra isomorphism"},
      {"galois.psi.inverse", "g -> sum_i g(x_i) t y_i inverts Psi"},
      {"galois.module_algebra", "module-algebra axioms: h |> (x y) = (h_(1) |> x)(h_(2) |> y), h |> 1 = epsilon(h) 1"},
      {"galois.smash", "smash product (x # h)(x' # h') = x (h_(1) |> x') # h_(2) h' is associative"},
      // models
      {"models.group", "group Hopf pair k[G], k^G with normalized integrals t, f: f(t) = f(S(t)) = epsilon(t) = 1"},
      {"models.galois_system", "E = t |> (-) is a conditional expectation with index lambda^{-1} = f(1)"},
      {"models.invariants", "invariants of the model action equal the expected subalgebra"},
      // verdict
      {"verdict", "strongly separable irreducible depth-2 extension is H-Galois for the reconstructed Hopf algebra"},
  };
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& anchor_registry() {
  static const auto registry = build_registry();
  return registry;
}

const std::string& anchor_for(std::string_view id) {
  const auto& reg = anchor_registry();
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& entry : reg) {
    const auto& prefix = entry.first;
    bool matches = id == prefix || (id.size() > prefix.size() && id.substr(0, prefix.size()) == prefix &&
                                    id[prefix.size()] == '.');
    if (matches && (!best || prefix.size() > best->first.size())) best = &entry;
  }
  if (!best) throw std::out_of_range("no anchor registered for check id '" + std::string(id) + "'");
  return best->second;
}

nlohmann::json to_json(const Vec& v) { return to_strings(v); }

nlohmann::json to_json(const Matrix& m) { return m.to_strings(); }

}  // namespace jtower
