// Acceptance gate: one PASS/FAIL line per criterion, exact arithmetic throughout.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "jtower/models.hpp"
#include "jtower/pipeline.hpp"

using namespace jtower;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Accumulates failures; the first few are kept for the summary line.
struct Tally {
  Outcome out;
  int failures = 0;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    out.ok = false;
    if (failures++ < 3) out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
  Outcome done(const std::string& summary) {
    if (out.ok) out.detail = summary;
    return out;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << " s";
  return os.str();
}

Subspace scalars(const Algebra& a) { return Subspace::from_basis(a.field(), a.dim(), {a.unit()}); }

FrobeniusSystem system_of(const ExtensionInput& ext) { return make_system(ext.M, ext.N, *ext.E, ext.dual_bases); }

ExtensionInput catalog(const std::string& name, const json& params = json::object()) {
  return generate_example(name, params).ext;
}

// EXT0..EXT4 in order.
std::vector<std::pair<std::string, ExtensionInput>> tower_examples() {
  return {{"EXT0", catalog("trivial")},
          {"EXT1", catalog("group-pair", {{"group", "S3"}, {"subgroup", "A3"}})},
          {"EXT2", catalog("group-pair", {{"group", "S3"}, {"subgroup", json::array({0, 3})}})},
          {"EXT3", catalog("quadratic-field", {{"d", 2}})},
          {"EXT4", catalog("footnote-m2f2")}};
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Tally t;
  auto t0 = std::chrono::steady_clock::now();
  // Round-trip through the file format, as the CLI loads it.
  std::string text = extension_to_json(catalog("footnote-m2f2")).dump();
  ExtensionInput ext = extension_from_json(json::parse(text));
  const Field& f = ext.M.field();
  t.require(f.characteristic() == 2, "field is not F_2");

  // E(A) = a11 + a12 + a21 on the basis e11, e12, e21, e22.
  Matrix E(f, 1, 4);
  E(0, 0) = E(0, 1) = E(0, 2) = f.one();
  t.require(ext.E && *ext.E == E, "E differs from a11 + a12 + a21");

  // e11(x)e21 + e12(x)e11 + e12(x)e21 + e22(x)e12 + e22(x)e22 + e21(x)e22
  Matrix tensor(f, 4, 4);
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 2}, {1, 0}, {1, 2}, {3, 1}, {3, 3}, {2, 3}})
    tensor(i, j) = f.one();
  t.require(ext.dual_bases && *ext.dual_bases == tensor, "dual-bases tensor differs from the printed one");

  FrobeniusSystem sys = make_system_from_pairs(ext.M, ext.N, E, tensor_to_pairs(tensor));
  Report r = verify_frobenius_system(sys);
  t.require(r.ok(), "Frobenius checks fail");
  Report ce = verify_conditional_expectation(ext.M, ext.N, E);
  t.require(ce.ok(), "conditional expectation checks fail");

  Vec index = ext.M.zero();
  for (const auto& [x, y] : sys.pairs) index = index + ext.M.multiply(x, y);
  t.require(index == ext.M.unit(), "sum x_i y_i != 1");
  t.require(sys.expect(ext.M.unit()) == ext.M.unit(), "E(1) != 1");
  double s = seconds_since(t0);
  t.require(s < 1.0, "runtime " + fmt_seconds(s));
  return t.done("EXT4 over F_2: dual bases, sum x_i y_i = 1, E(1) = 1 in " + fmt_seconds(s));
}

// mu(e) = 1 and m e = e m for every basis m, recomputed from the tensor.
void separability_oracle(Tally& t, const SeparabilityElement& s, const std::string& label) {
  const Algebra& X = s.extension;
  const std::size_t n = X.dim();
  Vec mu = X.zero();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!s.tensor(i, j).is_zero()) mu = mu + s.tensor(i, j) * X.multiply(X.basis(i), X.basis(j));
  t.require(mu == X.unit(), label + ": mu(e) != 1");
  for (std::size_t m = 0; m < n; ++m) {
    Matrix left(X.field(), n, n), right(X.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (s.tensor(i, j).is_zero()) continue;
        Vec mi = X.multiply(X.basis(m), X.basis(i));
        Vec jm = X.multiply(X.basis(j), X.basis(m));
        for (std::size_t p = 0; p < n; ++p) {
          left(p, j) += s.tensor(i, j) * mi[p];
          right(i, p) += s.tensor(i, j) * jm[p];
        }
      }
    t.require(left == right, label + ": m e != e m for basis element " + std::to_string(m));
  }
  t.require(s.multiplies_to_one && s.commutes, label + ": library flags disagree");
}

Outcome criterion2() {
  Tally t;
  Field q = Field::rational();
  separability_oracle(t, separability_element_field(q, {q.from_int(2), q.zero()}), "x^2 - 2 over Q");
  Field f7 = Field::prime(7);
  separability_oracle(t, separability_element_field(f7, {f7.from_int(2), f7.zero(), f7.zero()}), "x^3 - 2 over F_7");
  return t.done("x^2 - 2 over Q and x^3 - 2 over F_7: mu(e) = 1, m e = e m");
}

Outcome criterion3() {
  Tally t;
  const std::vector<std::string> ids = {
      "tower.braid.e1e2e1",          "tower.braid.e2e1e2",          "tower.pimsner_popa.l1",
      "tower.pimsner_popa.l1_opposite", "tower.pimsner_popa.l2",     "tower.pimsner_popa.l2_opposite",
      "tower.l1.expectation_of_e",   "tower.l2.expectation_of_e",   "tower.l1.endomorphism_ring",
      "tower.l2.endomorphism_ring",  "tower.l1.endomorphism_inverse", "tower.l2.endomorphism_inverse"};
  auto t0 = std::chrono::steady_clock::now();
  std::size_t largest = 0;
  for (auto& [label, ext] : tower_examples()) {
    TowerData tw = build_tower(system_of(ext));
    largest = std::max(largest, tw.M2().dim());
    for (const auto& id : ids) t.require(tw.report.passed(id), label + ": " + id);
    // Direct recomputation of the braid relations and E(e) = lambda.
    const Algebra& M2 = tw.M2();
    const Scalar lam = tw.lambda();
    t.require(M2.product({tw.e1, tw.e2, tw.e1}) == lam * tw.e1, label + ": e1 e2 e1 != lambda e1");
    t.require(M2.product({tw.e2, tw.e1, tw.e2}) == lam * tw.e2, label + ": e2 e1 e2 != lambda e2");
    t.require(tw.E_M1(tw.e2) == lam * tw.M1().unit(), label + ": E_M1(e2) != lambda");
    t.require(tw.E_M(tw.l1.e) == lam * tw.M().unit(), label + ": E_M(e1) != lambda");
  }
  double s = seconds_since(t0);
  t.require(s < 30.0, "runtime " + fmt_seconds(s));
  return t.done("EXT0-EXT4 braid, Pimsner-Popa, E(e) = lambda, endomorphism ring; largest dim " +
                std::to_string(largest) + ", " + fmt_seconds(s));
}

Outcome criterion4() {
  Tally t;
  Field q = Field::rational();
  Algebra k(q, 1, Vec{q.one()}, {{0, 0, 0, q.one()}});
  FrobeniusSystem triv = make_system(k, Subspace::whole(q, 1), Matrix::identity(q, 1));
  FrobeniusSystem ext3 = system_of(catalog("quadratic-field"));
  FrobeniusSystem top = system_of(catalog("biquadratic"));
  FrobeniusSystem whole2 = make_system(ext3.M, Subspace::whole(q, 2), Matrix::identity(q, 2));

  struct Case {
    std::string label;
    const FrobeniusSystem& outer;
    const FrobeniusSystem& inner;
    Scalar index;
  };
  std::vector<Case> cases = {{"k/k/k", triv, triv, q.one()},
                             {"Q(s2)/Q/Q", ext3, triv, q.from_int(2)},
                             {"Q(s2)/Q(s2)/Q", whole2, ext3, q.from_int(2)},
                             {"Q(s2,i)/Q(s2)/Q", top, ext3, q.from_int(4)}};
  for (const auto& c : cases) {
    Composite comp = compose(c.outer, c.inner);
    t.require(comp.report.ok(), c.label + ": composition checks fail");
    t.require(verify_frobenius_system(comp.system).ok(), c.label + ": dual-basis equations fail");
    t.require(comp.report.passed("frobenius.compose.lagrange"), c.label + ": Lagrange equation");
    // [R:N] = [R:M][M:N] from the factors.
    t.require(comp.system.lambda_inverse && *comp.system.lambda_inverse == c.index &&
                  *c.outer.lambda_inverse * *c.inner.lambda_inverse == c.index,
              c.label + ": index product");
  }
  return t.done("four compositions satisfy both dual-basis equations and [R:N] = [R:M][M:N]");
}

// Closed forms for k[G] and k^G.
HopfStructure group_closed_form(const Group& g, const Field& f, bool dual) {
  const std::size_t n = g.order();
  HopfStructure h;
  h.algebra = dual ? function_algebra(f, g) : group_algebra(f, g);
  h.delta = Matrix(f, n * n, n);
  h.epsilon = zero_vector(f, n);
  h.S = Matrix(f, n, n);
  for (std::size_t x = 0; x < n; ++x) {
    (*h.S)(g.inverse[x], x) = f.one();
    if (dual) {
      for (std::size_t y = 0; y < n; ++y) h.delta(y * n + g.mul(g.inverse[y], x), x) = f.one();
    } else {
      h.delta(x * n + x, x) = f.one();
      h.epsilon[x] = f.one();
    }
  }
  if (dual) h.epsilon[g.identity] = f.one();
  return h;
}

Outcome criterion5() {
  Tally t;
  int runs = 0;
  for (const Field& f : {Field::rational(), Field::prime(7)})
    for (const std::string& gname : {"Z/2", "Z/3", "S3"}) {
      Group g = group_by_name(gname);
      const std::size_t n = g.order();
      for (bool dual : {false, true}) {
        // B = k[G] paired with A = k^G, or the reverse; <delta_x, y> = [x = y].
        Algebra A = dual ? group_algebra(f, g) : function_algebra(f, g);
        Algebra B = dual ? function_algebra(f, g) : group_algebra(f, g);
        HopfStructure h = bialgebra_from_abstract_pairing(A, B, Matrix::identity(f, n));
        HopfStructure expect = group_closed_form(g, f, dual);
        const std::string label = std::string(dual ? "k^" : "k[") + gname + (dual ? "" : "]") + " over " + f.describe();
        t.require(h.delta == expect.delta, label + ": Delta");
        t.require(h.epsilon == expect.epsilon, label + ": epsilon");
        t.require(h.S && *h.S == *expect.S, label + ": S");
        t.require(h.report.ok() && h.report.passed("hopf.axioms.S_squared"), label + ": axioms");
        ++runs;
      }
    }
  return t.done(std::to_string(runs) + " group Hopf algebras match Delta, epsilon, S and pass every axiom");
}

Outcome criterion6() {
  Tally t;
  struct Case {
    std::string label;
    GroupHopf h;
    ModuleAlgebraAction act;
  };
  Field q = Field::rational(), f7 = Field::prime(7);
  GroupHopf z2 = group_hopf(cyclic_group(2), q);
  GroupHopf z3 = group_hopf(cyclic_group(3), f7);
  std::vector<Case> cases = {{"Q(sqrt2)", z2, conjugation_action(z2, q.from_int(2))},
                             {"k^{Z/3} over F_7", z3, translation_action(z3)}};
  for (const auto& c : cases) {
    ModelBundle b = galois_frobenius_system(c.h, c.act, scalars(c.act.X));
    const Algebra& X = c.act.X;
    const Field& f = X.field();
    const std::size_t n = c.h.group.order();
    t.require(b.report.ok(), c.label + ": model checks fail");
    for (const char* id : {"models.galois_system.bimodule", "galois.psi", "galois.psi.inverse"})
      t.require(b.report.passed(id), c.label + ": " + id);
    t.require(verify_conditional_expectation(X, b.N, b.system.E).ok(), c.label + ": conditional expectation");
    // E = t |> (-) with t = |G|^{-1} sum g.
    Scalar inv = f.from_int(static_cast<long long>(n)).inverse();
    for (std::size_t x = 0; x < X.dim(); ++x) {
      Vec avg = X.zero();
      for (const auto& m : c.act.act) avg = avg + inv * m.apply(X.basis(x));
      t.require(b.system.expect(X.basis(x)) == avg, c.label + ": E != t |> (-)");
    }
    Vec index = X.zero();
    for (const auto& [x, y] : b.system.pairs) index = index + X.multiply(x, y);
    Scalar order = f.from_int(static_cast<long long>(n));
    t.require(index == order * X.unit(), c.label + ": sum x_i y_i != |G|");
    t.require(b.system.lambda_inverse && *b.system.lambda_inverse == order, c.label + ": lambda^{-1} != |G|");
    t.require(dot(c.h.f, c.h.kG.algebra.unit()) == order, c.label + ": f(1) != |G|");
  }
  return t.done("Q(sqrt2) and k^{Z/3}: E = t |> (-), lambda^{-1} = f(1) = |G|, Psi an isomorphism");
}

Outcome criterion7() {
  Tally t;
  PipelineResult r = run_pipeline(catalog("trivial"));
  t.require(r.exit_code() == 0, "exit code " + std::to_string(r.exit_code()));
  t.require(r.report.count(Status::fail) == 0, std::to_string(r.report.count(Status::fail)) + " failed");
  t.require(r.report.count(Status::skipped) == 0, std::to_string(r.report.count(Status::skipped)) + " skipped");
  for (const char* id : {"depth2.level1", "depth2.level2", "hopf.pairing", "hopf.axioms.coassociative",
                         "hopf.axioms.counit", "hopf.axioms.antipode", "galois.smash_theta", "galois.cleft.cocycle",
                         "galois.galois_map", "verdict"})
    t.require(r.report.passed(id), std::string(id) + " did not pass");
  t.require(r.reconstruction && r.reconstruction->A.dim() == 1 && r.reconstruction->B.dim() == 1, "A, B not 1-dim");
  return t.done("EXT0: " + std::to_string(r.report.count(Status::pass)) + " checks pass, A = B = k");
}

Outcome criterion8() {
  Tally t;
  auto exts = tower_examples();
  std::vector<bool> verdicts;
  for (std::size_t i : {1, 2}) {
    const auto& [label, ext] = exts[i];
    PipelineResult r;
    try {
      r = run_pipeline(ext);
    } catch (const std::exception& e) {
      t.require(false, label + " crashed: " + e.what());
      continue;
    }
    t.require(r.report.count(Status::fail) == 0, label + ": failures");
    std::size_t skipped = 0;
    for (const auto& id : gated_stage_ids()) {
      const CheckResult* c = r.report.find(id);
      bool ok = c && c->status == Status::skipped && c->reason.find("irreducible") != std::string::npos;
      t.require(ok, label + ": " + id + " not skipped with the irreducibility reason");
      skipped += ok;
    }
    for (const auto& c : r.report.results())
      if (c.status == Status::skipped)
        t.require(!c.reason.empty(), label + ": " + c.id + " skipped without a reason");
    for (const char* id : {"depth2.level1.resolve", "depth2.level2.resolve", "depth2.level1.multiplicity"})
      t.require(r.report.passed(id), label + ": " + id);
    t.require(r.depth_two.has_value(), label + ": no depth-2 verdict");
    verdicts.push_back(r.depth_two.value_or(false));
  }
  t.require(verdicts.size() == 2 && verdicts[0] && !verdicts[1], "expected depth 2 for A3 only");
  return t.done("EXT1/EXT2: gated checks skipped citing irreducibility; depth 2 for A3, not for <(12)>, "
                "re-solve agrees");
}

Outcome criterion9() {
  Tally t;
  Field q = Field::rational();
  ExtensionInput mt = catalog("matrix-trace");
  const Algebra& M = mt.M;
  FrobeniusSystem sys = make_system(M, mt.N, *mt.E);
  Matrix qmap = nakayama(sys);
  Vec u = zero_vector(q, 4), u_inv = zero_vector(q, 4);  // diag(1, 2), diag(1, 1/2)
  u[0] = q.one();
  u[3] = q.from_int(2);
  u_inv[0] = q.one();
  u_inv[3] = q.from_ratio(1, 2);
  for (std::size_t c = 0; c < 4; ++c) {
    Vec unit = M.basis(c);
    Vec got = sys.centralizer.combine(qmap.apply(sys.centralizer.coordinates_or_throw(unit, "c")));
    t.require(got == M.product({u_inv, unit, u}), "q(e_" + std::to_string(c) + ") != u^{-1} e u");
  }

  // q(e) = e iff F(e c) = F(c e) on C, by uniqueness of q when F is faithful.
  int faithful = 0;
  for (const auto& name : example_names()) {
    PipelineOptions opt;
    opt.through = Stage::depth2;
    PipelineResult r = run_pipeline(catalog(name), opt);
    if (!r.report.passed("depth2.F_faithful")) continue;
    ++faithful;
    t.require(r.report.passed("depth2.nakayama.q_e"), name + ": q(e_1), q(e_2) check");
    const TowerData& tw = *r.tower;
    const Algebra& M2 = tw.M2();
    for (const auto& c : r.depth2->C.basis())
      for (const Vec* e : {&tw.e1, &tw.e2})
        t.require(tw.F.apply(M2.multiply(*e, c)) == tw.F.apply(M2.multiply(c, *e)), name + ": F(e c) != F(c e)");
  }
  t.require(faithful > 0, "no tower with F faithful");
  return t.done("q(c) = u^{-1} c u on all 4 matrix units; q(e_1) = e_1, q(e_2) = e_2 on " +
                std::to_string(faithful) + " faithful towers");
}

int shell(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10() {
  Tally t;
  fs::path dir = fs::temp_directory_path() / "jtower_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = JTOWER_CLI;
  for (const auto& name : example_names()) {
    fs::path in = dir / (name + ".json");
    t.require(shell(cli + " examples " + name + " --out '" + in.string() + "'") == 0, name + ": examples failed");
    for (const char* mode : {"--json", ""}) {
      fs::path a = dir / (name + ".a"), b = dir / (name + ".b");
      std::string base = cli + " verify " + mode + " '" + in.string() + "' > ";
      int ra = shell(base + "'" + a.string() + "' 2>/dev/null");
      int rb = shell(base + "'" + b.string() + "' 2>/dev/null");
      t.require(ra == rb, name + ": exit codes differ");
      t.require(!slurp(a).empty() && slurp(a) == slurp(b), name + ": reports differ " + mode);
    }
  }
  return t.done(std::to_string(example_names().size()) + " catalog examples give byte-identical reports");
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8,
                                                          criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::cout << "criterion " << (i + 1) << ": " << (o.ok ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
