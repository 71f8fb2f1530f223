// jtower: command-line front end for the verification pipeline.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "jtower/pipeline.hpp"

namespace {

using jtower::InputError;
using nlohmann::json;

struct Common {
  std::string path;
  std::string out;
  std::string check;
  int levels = 2;
  bool as_json = false;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

std::string sidecar_path(const std::string& out) {
  const std::string ext = ".json";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
    return out.substr(0, out.size() - ext.size()) + ".expected.json";
  return out + ".expected.json";
}

jtower::ExtensionInput load_extension(const std::string& path) {
  return jtower::extension_from_json(jtower::read_json_file(path));
}

int emit_pipeline(const Common& c, jtower::Stage stage, bool report_to_out) {
  jtower::ExtensionInput ext = load_extension(c.path);
  jtower::PipelineOptions opt;
  opt.through = stage;
  opt.levels = c.levels;
  opt.check_filter = c.check;
  jtower::PipelineResult r = jtower::run_pipeline(ext, opt);
  std::string body = c.as_json ? render(jtower::report_json(r, c.check)) : jtower::report_text(r, c.check);
  write_text(report_to_out ? c.out : std::string(), body);
  if (!r.input_valid) std::cerr << "invalid input: " << r.input_error << "\n";
  if (stage == jtower::Stage::tower && !c.out.empty() && r.tower) write_text(c.out, render(jtower::tower_dump(*r.tower)));
  return r.exit_code(c.check);
}

int cmd_hopf(const Common& c) {
  json in = jtower::read_json_file(c.path);
  const std::string prefix = c.out.empty() ? std::string("hopf") : c.out;
  if (in.value("format", std::string()) == "jtower-pairing/1") {
    jtower::PairingInput p = jtower::pairing_from_json(in);
    jtower::PairingResult r = jtower::run_pairing_check(p);
    std::cout << (c.as_json ? render(jtower::pairing_report_json(r, c.check)) : jtower::pairing_report_text(r, c.check));
    if (!r.B || !r.A) {
      std::cerr << "Hopf structure not reached\n";
      return 1;
    }
    write_text(prefix + ".B.json", render(jtower::hopf_dump(*r.B, "B", r.P)));
    write_text(prefix + ".A.json", render(jtower::hopf_dump(*r.A, "A", r.P.transpose())));
    return r.report.ok() ? 0 : 1;
  }
  jtower::ExtensionInput ext = jtower::extension_from_json(in);
  jtower::PipelineOptions opt;
  opt.through = jtower::Stage::hopf;
  jtower::PipelineResult r = jtower::run_pipeline(ext, opt);
  std::cout << (c.as_json ? render(jtower::report_json(r, c.check)) : jtower::report_text(r, c.check));
  if (!r.input_valid) {
    std::cerr << "invalid input: " << r.input_error << "\n";
    return 2;
  }
  if (!r.reconstruction) {
    std::string why = "reconstruction not reached";
    if (r.depth2 && !r.depth2->irreducible)
      why = "irreducibility failed: dim C_M(N) = " + std::to_string(r.depth2->base_centralizer.dim());
    else if (r.depth2 && !r.depth2->depth_two)
      why = "depth 2 failed";
    else if (const auto* p = r.report.find("hopf.pairing"); p && p->status == jtower::Status::fail)
      why = p->reason;
    std::cerr << why << "\n";
    return 1;
  }
  const auto& rec = *r.reconstruction;
  write_text(prefix + ".B.json", render(jtower::hopf_dump(rec.B, "B", rec.pairing.P)));
  write_text(prefix + ".A.json", render(jtower::hopf_dump(rec.A, "A", rec.pairing.P.transpose())));
  return r.exit_code(c.check);
}

int cmd_pair_check(const Common& c) {
  jtower::PairingInput p = jtower::pairing_from_json(jtower::read_json_file(c.path));
  jtower::PairingResult r = jtower::run_pairing_check(p);
  write_text(c.out, c.as_json ? render(jtower::pairing_report_json(r, c.check)) : jtower::pairing_report_text(r, c.check));
  return r.report.ok() ? 0 : 1;
}

json parse_params(const std::vector<std::string>& kv) {
  json params = json::object();
  for (const auto& item : kv) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("parameter '" + item + "' is not of the form key=value");
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    json v = json::parse(value, nullptr, false);
    params[key] = v.is_discarded() ? json(value) : v;
  }
  return params;
}

int cmd_examples(const std::string& name, const std::vector<std::string>& kv, const std::string& out) {
  if (name.empty()) {
    for (const auto& n : jtower::example_names()) std::cout << n << "\n";
    return 0;
  }
  jtower::Example ex;
  try {
    ex = jtower::generate_example(name, parse_params(kv));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (out.empty()) {
    std::cout << render(jtower::extension_to_json(ex.ext));
    return 0;
  }
  write_text(out, render(jtower::extension_to_json(ex.ext)));
  write_text(sidecar_path(out), render(ex.expected));
  return 0;
}

void add_common(CLI::App* sub, Common& c, bool levels) {
  sub->add_option("file", c.path, "extension file (jtower-extension/1)")->required();
  sub->add_flag("--json", c.as_json, "machine-readable report");
  sub->add_option("--check", c.check, "keep only checks whose id is or starts with this prefix");
  if (levels) sub->add_option("--levels", c.levels, "tower levels to build")->check(CLI::IsMember({1, 2}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Frobenius extensions, Jones towers and their Hopf algebras"};
  app.require_subcommand(1);
  Common c;

  auto* verify = app.add_subcommand("verify", "run every stage and report");
  add_common(verify, c, true);
  verify->add_option("--out", c.out, "write the report here");

  auto* tower = app.add_subcommand("tower", "build and check the tower N < M < M_1 < M_2");
  add_common(tower, c, true);
  tower->add_option("--out", c.out, "write the tower dump here");

  auto* depth2 = app.add_subcommand("depth2", "tower plus the depth-2 analysis");
  add_common(depth2, c, false);
  depth2->add_option("--out", c.out, "write the report here");

  auto* hopf = app.add_subcommand("hopf", "reconstruct the Hopf algebras A and B and write their dumps");
  add_common(hopf, c, false);
  hopf->add_option("--out", c.out, "prefix for <prefix>.A.json and <prefix>.B.json (default: hopf)");

  auto* pair = app.add_subcommand("pair-check", "Hopf structure from an abstract pairing file");
  add_common(pair, c, false);
  pair->add_option("--out", c.out, "write the report here");

  std::string ex_name;
  std::vector<std::string> ex_params;
  auto* examples = app.add_subcommand("examples", "write a catalog example, or list the catalog");
  examples->add_option("name", ex_name, "example name");
  examples->add_option("--param", ex_params, "key=value parameter (repeatable)");
  examples->add_option("--out", c.out, "extension file; the sidecar goes next to it as *.expected.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return emit_pipeline(c, jtower::Stage::galois, true);
    if (*tower) return emit_pipeline(c, jtower::Stage::tower, false);
    if (*depth2) return emit_pipeline(c, jtower::Stage::depth2, true);
    if (*hopf) return cmd_hopf(c);
    if (*pair) return cmd_pair_check(c);
    if (*examples) return cmd_examples(ex_name, ex_params, c.out);
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
