#include "jtower/pipeline.hpp"

#include <sstream>

namespace jtower {

using nlohmann::json;

namespace {

bool kept(const CheckResult& c, const std::string& filter) {
  if (filter.empty()) return true;
  return c.id == filter || (c.id.size() > filter.size() && c.id.compare(0, filter.size(), filter) == 0 &&
                            c.id[filter.size()] == '.');
}

void skip_all(Report& r, const std::vector<std::string>& ids, const std::string& reason) {
  for (const auto& id : ids) r.skip(id, reason);
}

nlohmann::json flags_json(const Flags& f) {
  return {{"split", f.split},
          {"separable", f.separable},
          {"strongly_separable", f.strongly_separable},
          {"irreducible", f.irreducible},
          {"normalized", f.normalized}};
}

// Every Hopf-level conclusion of the verdict and the ids that certify it.
const std::vector<std::pair<std::string, std::string>>& conclusion_ids() {
  static const std::vector<std::pair<std::string, std::string>> ids = {
      {"hopf_algebra_B", "hopf.axioms"},
      {"hopf_algebra_A", "hopf.dual.axioms"},
      {"module_algebra_B", "galois.action_B"},
      {"invariants", "galois.invariants_A"},
      {"smash_product", "galois.smash_MA"},
      {"galois_map", "galois.galois_map"},
  };
  return ids;
}

bool all_pass_under(const Report& r, const std::string& prefix) {
  bool any = false;
  for (const auto& c : r.results())
    if (kept(c, prefix)) {
      any = true;
      if (c.status != Status::pass) return false;
    }
  return any;
}

struct Verdict {
  std::vector<std::string> held, failed, certified, uncertified;
};

Verdict verdict_of(const PipelineResult& r) {
  Verdict v;
  auto hyp = [&](const std::string& name, bool ok) { (ok ? v.held : v.failed).push_back(name); };
  hyp("strongly_separable", r.flags_known && r.flags.strongly_separable);
  hyp("irreducible", r.flags_known && r.flags.irreducible);
  hyp("depth_two", r.depth_two.value_or(false));
  for (const auto& [name, prefix] : conclusion_ids())
    (all_pass_under(r.report, prefix) ? v.certified : v.uncertified).push_back(name);
  return v;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out.empty() ? "none" : out;
}

void add_verdict(PipelineResult& r) {
  Verdict v = verdict_of(r);
  nlohmann::json w = {{"hypotheses_held", v.held},
                      {"hypotheses_failed", v.failed},
                      {"conclusions_certified", v.certified},
                      {"conclusions_uncertified", v.uncertified}};
  if (!v.failed.empty()) {
    r.report.skip("verdict", "hypotheses failed: " + join(v.failed)).witness = w;
    return;
  }
  r.report.check("verdict", v.uncertified.empty(), "conclusions not certified: " + join(v.uncertified), w);
}

void run_stages(const ExtensionInput& ext, const PipelineOptions& opt, PipelineResult& r) {
  Report& rep = r.report;
  r.dims["M"] = ext.M.dim();
  r.dims["N"] = ext.N.dim();

  Report input = validate_extension(ext.M, ext.N);
  rep.append(input);
  if (!input.ok()) {
    r.input_valid = false;
    for (const auto& c : input.results())
      if (c.status == Status::fail) {
        r.input_error = c.id + ": " + c.reason;
        break;
      }
    return;
  }
  if (!ext.E) {
    r.input_valid = false;
    r.input_error = "input: a conditional expectation E is required";
    rep.fail("input.expectation", "no conditional expectation E given");
    return;
  }

  Report ce = verify_conditional_expectation(ext.M, ext.N, *ext.E, "frobenius.conditional_expectation", false);
  rep.append(ce);
  try {
    r.system = make_system(ext.M, ext.N, *ext.E, ext.dual_bases);
  } catch (const FrobeniusError& e) {
    rep.fail("frobenius.dual_bases", e.what());
    skip_all(rep, {"tower", "depth2", "hopf", "galois"}, "E is not a Frobenius homomorphism");
    return;
  }
  FrobeniusSystem& sys = *r.system;
  rep.append(verify_frobenius_system(sys));
  r.flags = classify(sys);
  r.flags_known = true;
  nlohmann::json cw = flags_json(r.flags);
  cw["index"] = to_string(sys.index_kind);
  if (sys.lambda_inverse) cw["lambda_inverse"] = sys.lambda_inverse->to_string();
  cw["dim_centralizer"] = sys.centralizer.dim();
  rep.pass("frobenius.classification", cw);

  try {
    Matrix q = nakayama(sys);
    rep.check("frobenius.nakayama", is_scope_automorphism(sys.M, sys.centralizer, q),
              "q is not an automorphism of C_M(N)", {{"q", to_json(q)}});
  } catch (const FrobeniusError& e) {
    rep.fail("frobenius.nakayama", e.what());
  }
  if (opt.through == Stage::frobenius) return;

  if (!r.flags.strongly_separable) {
    skip_all(rep, {"tower", "depth2", "hopf", "galois"},
             "not strongly separable: index " + to_string(sys.index_kind) + ", E(1) " +
                 (is_zero(sys.expect(sys.M.unit())) ? "zero" : "nonzero"));
    return;
  }
  if (!r.flags.normalized) {
    try {
      sys = normalize(sys);
      rep.pass("frobenius.normalize", {{"lambda_inverse", sys.lambda_inverse->to_string()}});
    } catch (const FrobeniusError& e) {
      rep.skip("frobenius.normalize", e.what());
      skip_all(rep, {"tower", "depth2", "hopf", "galois"}, std::string("E cannot be normalized: ") + e.what());
      return;
    }
  }

  if (opt.levels == 1) {
    TowerLevel l1 = basic_construction(sys, "tower.l1");
    rep.append(l1.report);
    rep.append(endo_ring_iso(sys, l1, "tower.l1"));
    r.dims["M1"] = l1.dim();
    r.level1 = std::move(l1);
    skip_all(rep, {"tower.l2", "depth2", "hopf", "galois"}, "tower limited to one level");
    return;
  }

  r.tower = build_tower(sys);
  const TowerData& t = *r.tower;
  rep.append(t.report);
  r.dims["M1"] = t.M1().dim();
  r.dims["M2"] = t.M2().dim();
  if (opt.through == Stage::tower) return;

  r.depth2 = analyze_depth_two(t);
  const DepthTwoData& d = *r.depth2;
  rep.append(d.report);
  r.depth_two = d.depth_two;
  r.dims["A"] = d.A.dim();
  r.dims["B"] = d.B.dim();
  r.dims["C"] = d.C.dim();
  if (opt.through == Stage::depth2) return;

  if (!d.irreducible || !d.depth_two) {
    std::string reason = !d.irreducible
                             ? "base not irreducible: dim C_M(N) = " + std::to_string(d.base_centralizer.dim())
                             : std::string("not depth 2");
    skip_all(rep, gated_stage_ids(), reason);
    if (opt.through == Stage::galois) add_verdict(r);
    return;
  }

  try {
    r.reconstruction = reconstruct(t, d);
  } catch (const HopfError& e) {
    rep.fail("hopf.pairing", e.what());
    skip_all(rep, {"galois"}, "Hopf reconstruction failed");
    if (opt.through == Stage::galois) add_verdict(r);
    return;
  }
  rep.append(r.reconstruction->report);
  if (opt.through == Stage::hopf) return;

  rep.append(analyze_galois(t, d, *r.reconstruction).report);
  add_verdict(r);
}

nlohmann::json checks_json(const Report& rep, const std::string& filter) {
  nlohmann::json out = nlohmann::json::array();
  nlohmann::json all = rep.to_json(false);
  for (std::size_t i = 0; i < rep.results().size(); ++i)
    if (kept(rep.results()[i], filter)) out.push_back(all[i]);
  return out;
}

nlohmann::json summary_json(const Report& rep, const std::string& filter) {
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& c : rep.results())
    if (kept(c, filter)) ++counts[static_cast<int>(c.status)];
  return {{"pass", counts[0]}, {"fail", counts[1]}, {"skipped", counts[2]}};
}

int exit_for(const Report& rep, const std::string& filter) {
  for (const auto& c : rep.results())
    if (kept(c, filter) && c.status == Status::fail) return 1;
  return 0;
}

void text_checks(std::ostream& os, const Report& rep, const std::string& filter) {
  for (const auto& c : rep.results()) {
    if (!kept(c, filter)) continue;
    os << "  [" << to_string(c.status) << "] " << c.id;
    if (!c.reason.empty()) os << ": " << c.reason;
    os << "\n";
    if (c.status == Status::fail && !c.witness.is_null()) os << "      witness " << c.witness.dump() << "\n";
  }
}

}  // namespace

const std::vector<std::string>& gated_stage_ids() {
  static const std::vector<std::string> ids = {
      "hopf.pairing", "hopf.pairing.bijection", "hopf.coproduct.defining", "hopf.axioms.coassociative",
      "hopf.axioms.counit", "hopf.axioms.delta_multiplicative", "hopf.axioms.epsilon_multiplicative",
      "hopf.axioms.antipode", "hopf.axioms.anti_coalgebra", "hopf.axioms.anti_algebra", "hopf.axioms.S_squared",
      "hopf.axioms.integral", "hopf.dual.axioms.coassociative", "hopf.dual.axioms.counit",
      "hopf.dual.axioms.delta_multiplicative", "hopf.dual.axioms.epsilon_multiplicative",
      "hopf.dual.axioms.antipode", "hopf.dual.axioms.anti_coalgebra", "hopf.dual.axioms.anti_algebra",
      "hopf.dual.axioms.S_squared", "hopf.dual.axioms.integral", "hopf.counit.cross_check",
      "hopf.antipode.definition", "hopf.antipode.remark", "hopf.antipode.bijective", "hopf.S_squared_nakayama",
      "hopf.exchange", "hopf.action_identity", "hopf.left_action_identity", "hopf.central_idempotents",
      "hopf.e2_integral", "hopf.dual.pairing_coproduct", "hopf.dual.e1_integral", "hopf.dual.e1_counit",
      "hopf.dual.e1_absorbs", "hopf.basis_independence", "galois.action_B", "galois.action_B.outer",
      "galois.action_B.e2", "galois.invariants_B", "galois.smash", "galois.smash_theta", "galois.smash_AB",
      "galois.action_A", "galois.action_A.e1", "galois.invariants_A", "galois.cleft.comodule",
      "galois.cleft.convolution_inverse", "galois.cleft.cocycle", "galois.smash_MA", "galois.galois_map",
      "galois.psi", "galois.psi.inverse",
  };
  return ids;
}

int PipelineResult::exit_code(const std::string& filter) const {
  if (!input_valid) return 2;
  return exit_for(report, filter);
}

PipelineResult run_pipeline(const ExtensionInput& ext, const PipelineOptions& options) {
  PipelineResult r;
  r.name = ext.name;
  r.field = ext.M.field().describe();
  r.digest = fnv1a_hex(extension_to_json(ext).dump());
  run_stages(ext, options, r);
  return r;
}

nlohmann::json report_json(const PipelineResult& r, const std::string& filter) {
  nlohmann::json j;
  j["format"] = "jtower-report/1";
  j["name"] = r.name;
  j["field"] = r.field;
  j["input_digest"] = r.digest;
  if (!r.input_valid) j["input_error"] = r.input_error;
  nlohmann::json hyp = r.flags_known ? flags_json(r.flags) : nlohmann::json::object();
  if (r.depth_two) hyp["depth_two"] = *r.depth_two;
  j["hypotheses"] = std::move(hyp);
  j["dims"] = r.dims;
  if (r.system && r.system->lambda_inverse) j["lambda_inverse"] = r.system->lambda_inverse->to_string();
  if (!filter.empty()) j["filter"] = filter;
  j["checks"] = checks_json(r.report, filter);
  j["summary"] = summary_json(r.report, filter);
  if (const auto* v = r.report.find("verdict")) {
    j["verdict"] = v->witness;
    j["verdict"]["status"] = to_string(v->status);
  }
  j["exit_code"] = r.exit_code(filter);
  return j;
}

std::string report_text(const PipelineResult& r, const std::string& filter) {
  std::ostringstream os;
  os << "extension " << (r.name.empty() ? "(unnamed)" : r.name) << " over " << r.field << "  digest " << r.digest
     << "\n";
  if (!r.input_valid) os << "invalid input: " << r.input_error << "\n";
  os << "dims";
  for (const auto& [k, v] : r.dims.items()) os << " " << k << "=" << v.get<std::size_t>();
  os << "\n";
  if (r.flags_known) {
    os << "hypotheses";
    const json flags = flags_json(r.flags);
    for (const auto& [k, v] : flags.items()) os << " " << k << "=" << (v.get<bool>() ? "yes" : "no");
    if (r.depth_two) os << " depth_two=" << (*r.depth_two ? "yes" : "no");
    os << "\n";
  }
  if (r.system && r.system->lambda_inverse) os << "lambda^-1 = " << r.system->lambda_inverse->to_string() << "\n";
  os << "checks\n";
  text_checks(os, r.report, filter);
  auto s = summary_json(r.report, filter);
  os << "summary: " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["skipped"] << " skipped\n";
  if (const auto* v = r.report.find("verdict")) {
    os << "verdict: " << to_string(v->status);
    if (!v->reason.empty()) os << " (" << v->reason << ")";
    os << "\n";
    if (v->witness.contains("hypotheses_held")) {
      os << "  hypotheses held: " << join(v->witness["hypotheses_held"].get<std::vector<std::string>>()) << "\n";
      os << "  conclusions certified: " << join(v->witness["conclusions_certified"].get<std::vector<std::string>>())
         << "\n";
    }
  }
  return os.str();
}

PairingResult run_pairing_check(const PairingInput& in) {
  PairingResult r;
  r.name = in.name;
  r.digest = fnv1a_hex(pairing_to_json(in).dump());
  r.P = in.P;
  try {
    HopfStructure B = bialgebra_from_abstract_pairing(in.A, in.B, in.P, in.mode, in.S);
    r.report.append(B.report);
    if (B.S) {
      HopfStructure A = dualize(in.A, B, in.P);
      r.report.append(A.report);
      r.A = std::move(A);
    } else {
      r.report.skip("hopf.dual.axioms", "no antipode on B");
    }
    r.B = std::move(B);
  } catch (const HopfError& e) {
    r.report.fail("hopf.pairing", e.what());
  }
  return r;
}

nlohmann::json pairing_report_json(const PairingResult& r, const std::string& filter) {
  nlohmann::json j;
  j["format"] = "jtower-report/1";
  j["name"] = r.name;
  j["input_digest"] = r.digest;
  if (r.B) j["dims"] = {{"A", r.B->dim()}, {"B", r.B->dim()}};
  if (!filter.empty()) j["filter"] = filter;
  j["checks"] = checks_json(r.report, filter);
  j["summary"] = summary_json(r.report, filter);
  j["exit_code"] = exit_for(r.report, filter);
  return j;
}

std::string pairing_report_text(const PairingResult& r, const std::string& filter) {
  std::ostringstream os;
  os << "pairing " << (r.name.empty() ? "(unnamed)" : r.name) << "  digest " << r.digest << "\n";
  if (r.B) os << "dim A = dim B = " << r.B->dim() << "\n";
  os << "checks\n";
  text_checks(os, r.report, filter);
  auto s = summary_json(r.report, filter);
  os << "summary: " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["skipped"] << " skipped\n";
  return os.str();
}

}  // namespace jtower
