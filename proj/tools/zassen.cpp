#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "zassen/error.hpp"
#include "zassen/io.hpp"
#include "zassen/verifier.hpp"

using namespace zassen;

namespace {

constexpr int kExitParse = 3, kExitCap = 4, kExitUnknown = 5;

struct GroupSelector {
  std::string id;
  std::string spec;  // inline JSON or @file
  std::string kind = "magnus";
  unsigned p = 2;
  std::size_t gens = 2, trunc = 3, size = 3, order = 4;
};

struct Common {
  std::string workspace = "zassen-workspace";
  std::string format = "text";
  std::size_t n = 2, max_dim = 1;
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
};

void add_selector(CLI::App* cmd, GroupSelector& s) {
  cmd->add_option("--group", s.id, "Stored group id");
  cmd->add_option("--spec", s.spec, "Group spec JSON, or @file");
  cmd->add_option("--kind", s.kind, "magnus, cyclic or matrix-unipotent")
      ->check(CLI::IsMember({"magnus", "cyclic", "matrix-unipotent"}));
  cmd->add_option("--p", s.p, "Prime");
  cmd->add_option("--gens", s.gens, "Number of free generators (magnus)");
  cmd->add_option("--trunc", s.trunc, "Truncation degree m, G = S/S_(m) (magnus)");
  cmd->add_option("--size", s.size, "Matrix size (matrix-unipotent)");
  cmd->add_option("--order", s.order, "Group order (cyclic)");
}

GroupSpec spec_of(const GroupSelector& s) {
  if (!s.spec.empty()) {
    std::string text = s.spec;
    if (text[0] == '@') {
      std::ifstream in(text.substr(1));
      if (!in) throw Error(ErrorKind::UnknownId, "cannot read " + text.substr(1));
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, e.what());
    }
    return spec_from_json(j);
  }
  const auto p = static_cast<Scalar>(s.p);
  if (s.kind == "cyclic") return GroupSpec::cyclic(p, s.order);
  if (s.kind == "matrix-unipotent") return GroupSpec::unipotent(p, s.size);
  return GroupSpec::magnus(p, s.gens, s.trunc);
}

struct Loaded {
  std::string id;
  BuiltGroup group;
  Filtration filtration;
};

Loaded load(Workspace& ws, const GroupSelector& s) {
  Loaded out;
  if (!s.id.empty()) {
    out.id = s.id;
    out.group = ws.load_group(s.id, &out.filtration);
    return out;
  }
  out.group = build_group(spec_of(s));
  out.filtration = zassenhaus_recursive(out.group.group);
  out.id = ws.store_group(out.group, out.filtration);
  return out;
}

void emit(const Common& c, const Json& j, const std::string& text) {
  if (c.format == "json")
    std::cout << j.dump(1) << "\n";
  else
    std::cout << text;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return "[" + s + "]";
}

int cmd_group_build(Workspace& ws, const Common& c, const GroupSelector& s) {
  const auto L = load(ws, s);
  Json j;
  j["id"] = L.id;
  j["name"] = L.group.spec.name();
  j["order"] = L.group.group.order();
  j["filtration_orders"] = L.filtration.orders();
  j["path"] = (ws.root() / "groups" / (L.id + ".json")).string();
  emit(c, j,
       "group " + L.id + "  " + L.group.spec.name() + "  order " + std::to_string(L.group.group.order()) +
           "  filtration " + join(L.filtration.orders()) + "\n");
  return 0;
}

int cmd_filtration(Workspace& ws, const Common& c, const GroupSelector& s, const std::string& algo) {
  const auto L = load(ws, s);
  const auto& g = L.group.group;
  Json j;
  j["id"] = L.id;
  std::ostringstream os;
  std::vector<Filtration> all;
  auto add = [&](const std::string& name, Filtration f) {
    j["orders"][name] = f.orders();
    os << name << ": " << join(f.orders()) << "\n";
    all.push_back(std::move(f));
  };
  if (algo == "recursive" || algo == "all") add("recursive", zassenhaus_recursive(g));
  if (algo == "lazard" || algo == "all") add("lazard", zassenhaus_lazard(g));
  if (algo == "degree" || algo == "all") add(L.group.third_oracle_name, L.group.third_oracle);
  bool agree = true;
  for (const auto& f : all) agree = agree && f == all.front();
  const std::string verdict =
      all.size() == 3 ? (agree ? "3-way agree" : "disagree") : (agree ? "consistent" : "disagree");
  j["verdict"] = verdict;
  os << "verdict: " << verdict << "\n";
  ws.store("reports", "filtration-", j.dump(1));
  emit(c, j, os.str());
  return agree ? 0 : 1;
}

int cmd_verify(Workspace& ws, const Common& c, const GroupSelector& s) {
  const auto L = load(ws, s);
  HarnessConfig cfg;
  cfg.n = c.n;
  cfg.max_dim = c.max_dim;
  cfg.enumeration = {c.budget, c.jobs};
  const auto rep = run_theorem_harness(L.group, cfg);
  const auto j = to_json(rep, L.group.group);
  const auto name = ws.store_report(j);
  emit(c, j, render_text(rep) + "report " + (ws.root() / "reports" / (name + ".json")).string() + "\n");
  return exit_code(rep.overall);
}

int cmd_separate(Workspace& ws, const Common& c, const GroupSelector& s, const std::string& word) {
  const auto L = load(ws, s);
  const auto& g = L.group.group;
  const Elem sigma = parse_word(g, word);
  Separator sep(g, L.filtration, {c.max_dim, {c.budget, c.jobs}});
  const auto r = sep.separate(sigma, c.n);
  Json j;
  j["element"] = sigma;
  j["word"] = word;
  j["outcome"] = to_string(r.outcome);
  j["layer"] = r.layer;
  j["route"] = r.route;
  j["max_dim"] = r.max_dim;
  std::ostringstream os;
  os << word << " (element " << sigma << "): " << to_string(r.outcome);
  if (r.outcome == SeparationOutcome::NotApplicable) os << ", lies in G_(" << c.n + 1 << ")";
  if (r.layer) os << ", layer " << r.layer << ", route " << r.route;
  os << "\n";
  if (r.rep) {
    std::vector<std::uint64_t> gi;
    for (Elem x : g.generators()) gi.push_back(r.rep->images[x]);
    j["system"] = to_json(*r.rep->system);
    j["system_file"] = ws.store_system(*r.rep->system);
    j["generator_images"] = gi;
    j["image"] = r.rep->coords(sigma);
    os << "image coordinates:";
    for (auto x : r.rep->coords(sigma)) os << ' ' << x;
    os << "\n";
  }
  ws.store("reports", "separate-", j.dump(1));
  emit(c, j, os.str());
  if (r.outcome == SeparationOutcome::Inconclusive) return 2;
  return 0;
}

int cmd_pairing(Workspace& ws, const Common& c, const GroupSelector& s, const std::vector<std::string>& words) {
  const auto L = load(ws, s);
  const auto& g = L.group.group;
  Subgroup n = L.filtration.term(c.n);
  if (!words.empty()) {
    std::vector<Elem> seeds;
    for (const auto& w : words) seeds.push_back(parse_word(g, w));
    n = normal_closure(g, seeds);
  }
  const PairingContext ctx(g, L.filtration, n, c.n, {c.max_dim, {c.budget, c.jobs}});
  const auto layer = analyse_context(ctx);
  Json j;
  j["id"] = L.id;
  j["n"] = c.n;
  j["subgroup_order"] = n.order();
  Json rows = Json::array();
  for (std::size_t i = 0; i < layer.matrix.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < layer.matrix.cols(); ++k) row.push_back(layer.matrix.at(i, k));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["rank"] = layer.rank;
  j["left"] = to_string(layer.left);
  j["right"] = to_string(layer.right);
  j["routes_agreeing"] = layer.pairs_agreeing;
  j["routes_compared"] = layer.pairs_compared;
  Json checks = Json::array();
  for (const auto& ch : layer.checks) checks.push_back({{"name", ch.name}, {"holds", ch.holds}});
  j["checks"] = checks;
  j["verdict"] = to_string(layer.verdict);
  std::ostringstream os;
  os << "|N| = " << n.order() << ", pairing " << layer.left_dim << " x " << layer.right_dim << ", rank "
     << layer.rank << "\n";
  for (std::size_t i = 0; i < layer.matrix.rows(); ++i) {
    os << " ";
    for (std::size_t k = 0; k < layer.matrix.cols(); ++k) os << ' ' << layer.matrix.at(i, k);
    os << "\n";
  }
  os << "left " << to_string(layer.left) << ", right " << to_string(layer.right) << ", routes "
     << layer.pairs_agreeing << "/" << layer.pairs_compared << "\n";
  for (const auto& ch : layer.checks) os << "  " << ch.name << ": " << (ch.holds ? "ok" : "FAILS") << "\n";
  os << "verdict: " << to_string(layer.verdict) << "\n";
  ws.store("reports", "pairing-", j.dump(1));
  emit(c, j, os.str());
  return exit_code(layer.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zassenhaus filtrations, Massey products and unipotent representations of finite p-groups"};
  app.require_subcommand(1);
  Common c;
  GroupSelector sel;
  std::string algo = "all", word;
  std::vector<std::string> subgroup;

  app.add_option("--workspace", c.workspace, "Workspace directory")->capture_default_str();
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  auto numeric = [&](CLI::App* cmd) {
    cmd->add_option("--rank-n", c.n, "Rank n")->check(CLI::Range(1, 16));
    cmd->add_option("--catalog-dim", c.max_dim, "Catalog bound D")->check(CLI::Range(1, 4));
    cmd->add_option("--budget", c.budget, "Candidate tuples per enumeration");
    cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 256));
  };

  auto* build = app.add_subcommand("group-build", "Build and store a group");
  add_selector(build, sel);
  auto* filt = app.add_subcommand("filtration", "Zassenhaus filtration by each algorithm");
  add_selector(filt, sel);
  filt->add_option("--algorithm", algo)->check(CLI::IsMember({"recursive", "lazard", "degree", "all"}));
  auto* verify = app.add_subcommand("verify", "Run the theorem harness");
  add_selector(verify, sel);
  numeric(verify);
  auto* separate = app.add_subcommand("separate", "Find a representation not killing an element");
  add_selector(separate, sel);
  numeric(separate);
  separate->add_option("--element", word, "Word in the generators, e.g. [x1,x2]")->required();
  auto* pairing = app.add_subcommand("pairing", "Pairing matrix for N = G_(n) or a normal closure");
  add_selector(pairing, sel);
  numeric(pairing);
  pairing->add_option("--subgroup", subgroup, "Words whose normal closure is N (default G_(n))");

  for (auto* cmd : {build, filt, verify, separate, pairing}) {
    cmd->add_option("--workspace", c.workspace, "Workspace directory");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    Workspace ws(c.workspace);
    if (*build) return cmd_group_build(ws, c, sel);
    if (*filt) return cmd_filtration(ws, c, sel, algo);
    if (*verify) return cmd_verify(ws, c, sel);
    if (*separate) return cmd_separate(ws, c, sel, word);
    if (*pairing) return cmd_pairing(ws, c, sel, subgroup);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Parse: return kExitParse;
      case ErrorKind::TooLarge: return kExitCap;
      case ErrorKind::UnknownId: return kExitUnknown;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
