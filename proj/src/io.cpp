#include "zassen/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "zassen/error.hpp"

namespace zassen {

namespace {

std::string pair_key(std::size_t i, std::size_t j) { return std::to_string(i) + "," + std::to_string(j); }

std::vector<std::size_t> parse_key(const std::string& k, std::size_t parts) {
  std::vector<std::size_t> out;
  std::stringstream ss(k);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Parse, "bad index key '" + k + "'");
    out.push_back(std::stoul(tok));
  }
  if (out.size() != parts) throw Error(ErrorKind::Parse, "bad index key '" + k + "'");
  return out;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

Json elements_json(const std::vector<Elem>& e) { return Json(e); }

Json verdict_json(Verdict v) { return to_string(v); }

}  // namespace

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fnv_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return hex64(h);
}

Json to_json(const MultSystem& s) {
  Json j;
  j["p"] = s.p();
  j["n"] = s.rank();
  Json dims = Json::object();
  for (std::size_t i = 1; i <= s.rank(); ++i)
    for (std::size_t k = i + 1; k <= s.rank() + 1; ++k) dims[pair_key(i, k)] = s.dim(i, k);
  j["dims"] = dims;
  Json pairings = Json::object();
  for (std::size_t i = 1; i <= s.rank(); ++i)
    for (std::size_t m = i + 1; m <= s.rank(); ++m)
      for (std::size_t k = m + 1; k <= s.rank() + 1; ++k) {
        const auto& mu = s.pairing(i, m, k);
        Json t = Json::array();
        for (std::size_t a = 0; a < mu.dim_a(); ++a) {
          Json ta = Json::array();
          for (std::size_t b = 0; b < mu.dim_b(); ++b) {
            Json tb = Json::array();
            for (std::size_t c = 0; c < mu.dim_c(); ++c) tb.push_back(mu.at(a, b, c));
            ta.push_back(tb);
          }
          t.push_back(ta);
        }
        pairings[pair_key(i, m) + "," + std::to_string(k)] = t;
      }
  j["pairings"] = pairings;
  return j;
}

MultSystem system_from_json(const Json& j) {
  return guarded([&] {
    const Scalar p = j.at("p").get<Scalar>();
    const std::size_t n = j.at("n").get<std::size_t>();
    if (n < 1) throw Error(ErrorKind::Parse, "rank must be positive");
    MultSystem::Dims dims(n + 2, std::vector<std::size_t>(n + 2, 0));
    for (const auto& [k, v] : j.at("dims").items()) {
      const auto ij = parse_key(k, 2);
      if (ij[0] < 1 || ij[0] >= ij[1] || ij[1] > n + 1) throw Error(ErrorKind::Parse, "dims key out of range");
      dims[ij[0]][ij[1]] = v.get<std::size_t>();
    }
    std::map<std::vector<std::size_t>, BilinearMap> maps;
    if (j.contains("pairings"))
      for (const auto& [k, v] : j.at("pairings").items()) {
        const auto ijk = parse_key(k, 3);
        if (ijk[0] < 1 || ijk[0] >= ijk[1] || ijk[1] >= ijk[2] || ijk[2] > n + 1)
          throw Error(ErrorKind::Parse, "pairing key out of range");
        const std::size_t da = dims[ijk[0]][ijk[1]], db = dims[ijk[1]][ijk[2]], dc = dims[ijk[0]][ijk[2]];
        BilinearMap mu(p, da, db, dc);
        if (v.size() != da) throw Error(ErrorKind::Parse, "pairing tensor has the wrong shape");
        for (std::size_t a = 0; a < da; ++a) {
          if (v[a].size() != db) throw Error(ErrorKind::Parse, "pairing tensor has the wrong shape");
          for (std::size_t b = 0; b < db; ++b) {
            if (v[a][b].size() != dc) throw Error(ErrorKind::Parse, "pairing tensor has the wrong shape");
            for (std::size_t c = 0; c < dc; ++c) {
              const auto x = v[a][b][c].get<Scalar>();
              if (x >= p) throw Error(ErrorKind::Parse, "tensor entry not reduced mod p");
              mu.at(a, b, c) = x;
            }
          }
        }
        maps[ijk] = std::move(mu);
      }
    return MultSystem(p, n, dims, [&](std::size_t i, std::size_t m, std::size_t k) {
      auto it = maps.find({i, m, k});
      return it != maps.end() ? it->second : BilinearMap(p, dims[i][m], dims[m][k], dims[i][k]);
    });
  });
}

Json to_json(const GroupSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["p"] = s.p;
  switch (s.kind) {
    case GroupKind::Magnus:
      j["d"] = s.d;
      j["m"] = s.m;
      break;
    case GroupKind::Cyclic: j["order"] = s.order; break;
    case GroupKind::Unipotent:
      j["size"] = s.size;
      if (s.matrices) {
        Json gens = Json::array();
        for (const auto& m : *s.matrices) {
          Json rows = Json::array();
          for (std::size_t i = 0; i < s.size; ++i)
            rows.push_back(std::vector<Scalar>(m.begin() + i * s.size, m.begin() + (i + 1) * s.size));
          gens.push_back(rows);
        }
        j["generators"] = gens;
      }
      break;
  }
  return j;
}

GroupSpec spec_from_json(const Json& j) {
  return guarded([&] {
    const auto kind = j.at("kind").get<std::string>();
    const auto p = j.at("p").get<Scalar>();
    if (kind == "magnus") return GroupSpec::magnus(p, j.at("d").get<std::size_t>(), j.at("m").get<std::size_t>());
    if (kind == "cyclic") return GroupSpec::cyclic(p, j.at("order").get<std::size_t>());
    if (kind == "matrix-unipotent") {
      auto s = GroupSpec::unipotent(p, j.at("size").get<std::size_t>());
      if (j.contains("generators")) {
        std::vector<Matrix> ms;
        for (const auto& rows : j.at("generators")) {
          Matrix m;
          if (rows.size() != s.size) throw Error(ErrorKind::Parse, "generator matrix has the wrong size");
          for (const auto& r : rows) {
            if (r.size() != s.size) throw Error(ErrorKind::Parse, "generator matrix has the wrong size");
            for (const auto& x : r) m.push_back(x.get<Scalar>());
          }
          ms.push_back(std::move(m));
        }
        s.matrices = std::move(ms);
      }
      return s;
    }
    throw Error(ErrorKind::Parse, "unknown group kind '" + kind + "'");
  });
}

Json to_json(const FiniteGroup& g) {
  Json j;
  j["p"] = g.p();
  j["order"] = g.order();
  j["digest"] = hex64(g.digest());
  j["generators"] = g.generators();
  j["labels"] = g.generator_labels();
  j["table"] = g.table();
  return j;
}

FiniteGroup group_from_json(const Json& j) {
  return guarded([&] {
    FiniteGroup g(j.at("p").get<Scalar>(), j.at("table").get<std::vector<std::uint16_t>>(),
                  j.at("generators").get<std::vector<Elem>>(), j.at("labels").get<std::vector<std::string>>());
    if (j.contains("digest") && j.at("digest").get<std::string>() != hex64(g.digest()))
      throw Error(ErrorKind::Parse, "group digest mismatch");
    return g;
  });
}

Json to_json(const Filtration& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms) terms.push_back(t.elements());
  return terms;
}

Filtration filtration_from_json(const FiniteGroup& g, const Json& j) {
  return guarded([&] {
    Filtration f;
    for (const auto& t : j) {
      auto e = t.get<std::vector<Elem>>();
      for (Elem x : e)
        if (x >= g.order()) throw Error(ErrorKind::Parse, "element index out of range");
      f.terms.push_back(subgroup_from_elements(g, std::move(e)));
    }
    return f;
  });
}

Json to_json(const VerificationReport& r, const FiniteGroup& g) {
  std::vector<MultSystem> systems;
  auto system_index = [&](const MultSystem& s) {
    for (std::size_t i = 0; i < systems.size(); ++i)
      if (systems[i] == s) return i;
    systems.push_back(s);
    return systems.size() - 1;
  };

  Json j;
  j["schema"] = kReportSchema;
  j["group"] = {{"name", r.group_name}, {"digest", hex64(r.group_digest)}, {"p", r.p}, {"order", r.order}};
  j["n"] = r.n;
  j["catalog_max_dim"] = r.max_dim;
  j["filtration"] = {{"orders", r.filtration_orders},
                     {"oracles_agree", r.filtrations_agree},
                     {"third_oracle", r.third_oracle}};
  j["hypothesis"] = {{"status", r.hypothesis.status},
                     {"method", r.hypothesis.method},
                     {"free_rank", r.hypothesis.free_rank}};
  j["zassenhaus_term"] = {{"order", r.zassenhaus_term.size()}, {"elements", elements_json(r.zassenhaus_term)}};
  j["intersection"] = {{"order", r.intersection.size()}, {"elements", elements_json(r.intersection)}};
  const auto& top = r.kernel_layers.back().result;
  j["standard_system_sufficed"] = top.standard_sufficed;
  j["sufficient_dim"] = top.sufficient_dim ? Json(*top.sufficient_dim) : Json(nullptr);

  Json kl = Json::array();
  for (const auto& L : r.kernel_layers) {
    Json needed = Json::array();
    for (const auto& s : L.result.systems_needed) needed.push_back(system_index(s));
    kl.push_back({{"k", L.k},
                  {"expected_order", L.expected_order},
                  {"intersection_order", L.result.intersection.order()},
                  {"sufficient_dim", L.result.sufficient_dim ? Json(*L.result.sufficient_dim) : Json(nullptr)},
                  {"standard_sufficed", L.result.standard_sufficed},
                  {"systems_visited", L.result.systems_visited},
                  {"systems_needed", needed},
                  {"representations", L.result.reps},
                  {"truncated", L.result.truncated},
                  {"separated_beyond_catalog", L.separated_beyond_catalog},
                  {"verdict", verdict_json(L.verdict)}});
  }
  j["kernel_layers"] = kl;

  Json pl = Json::array();
  for (const auto& L : r.pairing_layers) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < L.matrix.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t c = 0; c < L.matrix.cols(); ++c) row.push_back(L.matrix.at(i, c));
      rows.push_back(row);
    }
    Json checks = Json::array();
    for (const auto& c : L.checks)
      checks.push_back({{"name", c.name}, {"holds", c.holds}, {"dim_left", c.dim_left}, {"dim_right", c.dim_right}});
    pl.push_back({{"k", L.k},
                  {"left_dim", L.left_dim},
                  {"phi_dim", L.phi_dim},
                  {"right_dim", L.right_dim},
                  {"rank", L.rank},
                  {"systems", L.systems},
                  {"representations", L.reps},
                  {"truncated", L.truncated},
                  {"matrix", rows},
                  {"left", verdict_json(L.left)},
                  {"right", verdict_json(L.right)},
                  {"route_pairs_compared", L.pairs_compared},
                  {"route_pairs_agreeing", L.pairs_agreeing},
                  {"checks", checks},
                  {"verdict", verdict_json(L.verdict)}});
  }
  j["pairing_layers"] = pl;

  Json wit = Json::array();
  for (const auto& w : r.witnesses) {
    const auto& s = w.separation;
    Json e = {{"element", w.element},
              {"word", g.label(w.element)},
              {"layer", s.layer},
              {"route", s.route},
              {"max_dim", s.max_dim},
              {"outcome", to_string(s.outcome)}};
    if (s.rep) {
      std::vector<std::uint64_t> gi;
      for (Elem x : g.generators()) gi.push_back(s.rep->images[x]);
      e["representation"] = {{"system", system_index(*s.rep->system)},
                             {"level", s.rep->level},
                             {"generator_images", gi},
                             {"image_of_element", s.rep->images[w.element]}};
    }
    wit.push_back(e);
  }
  j["separation"] = {{"attempted", r.separations_attempted}, {"succeeded", r.separations_succeeded}, {"witnesses", wit}};

  Json sys = Json::array();
  for (const auto& s : systems) sys.push_back(to_json(s));
  j["systems"] = sys;
  j["equivalence"] = r.equivalence;
  j["main_theorem"] = verdict_json(r.main_theorem);
  j["verdict"] = verdict_json(r.overall);
  j["problems"] = r.problems;
  j["timings"] = r.timings;
  return j;
}

std::string canonical_dump(const Json& report) {
  Json copy = report;
  copy.erase("timings");
  return copy.dump(1);
}

std::string render_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "group " << r.group_name << "  order " << r.order << "  p " << r.p << "  n " << r.n << "  D " << r.max_dim
     << "\n";
  os << "filtration orders:";
  for (auto o : r.filtration_orders) os << ' ' << o;
  os << (r.filtrations_agree ? "  (3-way agree, " : "  (ORACLES DISAGREE, ") << r.third_oracle << ")\n";
  os << "hypothesis R <= S_(n): " << r.hypothesis.status << " (" << r.hypothesis.method << ")\n";
  os << "|G_(n+1)| = " << r.zassenhaus_term.size() << "  |intersection| = " << r.intersection.size() << "\n";
  for (const auto& L : r.kernel_layers) {
    os << "  kernels k=" << L.k << ": |int| " << L.result.intersection.order() << " vs " << L.expected_order
       << ", systems " << L.result.systems_visited << ", needed " << L.result.systems_needed.size()
       << (L.result.standard_sufficed ? ", standard alone" : "") << (L.result.truncated ? ", TRUNCATED" : "")
       << " -> " << to_string(L.verdict) << "\n";
  }
  for (const auto& L : r.pairing_layers) {
    os << "  pairing k=" << L.k << ": " << L.left_dim << " x " << L.right_dim << " rank " << L.rank << ", routes "
       << L.pairs_agreeing << "/" << L.pairs_compared << ", left " << to_string(L.left) << ", right "
       << to_string(L.right) << " -> " << to_string(L.verdict) << "\n";
    for (const auto& c : L.checks)
      os << "    " << c.name << ": " << (c.holds ? "ok" : "FAILS") << " (" << c.dim_left << ", " << c.dim_right
         << ")\n";
  }
  if (r.separations_attempted)
    os << "separated " << r.separations_succeeded << "/" << r.separations_attempted << " elements\n";
  os << "equivalence " << r.equivalence << "; main theorem " << to_string(r.main_theorem) << "; verdict "
     << to_string(r.overall) << "\n";
  for (const auto& p : r.problems) os << "problem: " << p << "\n";
  return os.str();
}

namespace {

class WordParser {
 public:
  WordParser(const FiniteGroup& g, std::string_view s) : g_(g), s_(s) {}

  Elem parse() {
    const Elem e = word();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "word '" + std::string(s_) + "' at " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '[' || c == '(' || c == '1' || std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  Elem word() {
    Elem e = g_.id();
    bool any = false;
    while (true) {
      if (any && at('*')) {
        ++pos_;
        if (!starts_factor()) fail("expected a factor after '*'");
      }
      if (!starts_factor()) break;
      e = g_.mul(e, factor());
      any = true;
    }
    if (!any) fail("empty word");
    return e;
  }

  Elem factor() {
    Elem a = atom();
    if (at('^')) {
      ++pos_;
      skip();
      bool neg = false;
      if (pos_ < s_.size() && s_[pos_] == '-') {
        neg = true;
        ++pos_;
      }
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      if (pos_ - start > 18) fail("exponent too large");
      const auto k = std::stoull(std::string(s_.substr(start, pos_ - start)));
      a = g_.pow(neg ? g_.inv(a) : a, k);
    }
    return a;
  }

  Elem atom() {
    skip();
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      const Elem e = word();
      if (!at(')')) fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == '[') {
      ++pos_;
      const Elem a = word();
      if (!at(',')) fail("expected ','");
      ++pos_;
      const Elem b = word();
      if (!at(']')) fail("expected ']'");
      ++pos_;
      return g_.comm(a, b);
    }
    if (c == '1') {
      ++pos_;
      return g_.id();
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const auto name = s_.substr(start, pos_ - start);
    const auto& labels = g_.generator_labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == name) return g_.generators()[i];
    pos_ = start;
    fail("unknown generator '" + std::string(name) + "'");
  }

  const FiniteGroup& g_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Contract, "cannot write " + path.string());
  out << content;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnknownId, "no such file " + path.string());
  return guarded([&] { return Json::parse(in); });
}

}  // namespace

Elem parse_word(const FiniteGroup& g, std::string_view word) { return WordParser(g, word).parse(); }

Workspace::Workspace(std::filesystem::path root) : root_(std::move(root)) {
  for (const char* sub : {"groups", "systems", "reports"}) std::filesystem::create_directories(root_ / sub);
}

std::filesystem::path Workspace::store(const std::string& sub, const std::string& prefix, const std::string& content) {
  const auto path = root_ / sub / (prefix + fnv_hex(content) + ".json");
  write_file(path, content);
  return path;
}

std::string Workspace::store_group(const BuiltGroup& g, const Filtration& f) {
  const std::string id = fnv_hex(to_json(g.spec).dump());
  Json j;
  j["id"] = id;
  j["spec"] = to_json(g.spec);
  j["group"] = to_json(g.group);
  j["filtration"] = to_json(f);
  write_file(root_ / "groups" / (id + ".json"), j.dump(1));
  return id;
}

BuiltGroup Workspace::load_group(const std::string& id, Filtration* cached_filtration) const {
  if (id.empty() || id.find_first_not_of("0123456789abcdef") != std::string::npos)
    throw Error(ErrorKind::UnknownId, "malformed group id '" + id + "'");
  const auto path = root_ / "groups" / (id + ".json");
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::UnknownId, "unknown group id '" + id + "'");
  const Json j = read_json(path);
  auto built = build_group(spec_from_json(guarded([&] { return j.at("spec"); })));
  const auto stored = group_from_json(guarded([&] { return j.at("group"); }));
  if (!(stored == built.group)) throw Error(ErrorKind::Contract, "stored group differs from its rebuilt spec");
  const auto cached = filtration_from_json(built.group, guarded([&] { return j.at("filtration"); }));
  if (!(cached == zassenhaus_recursive(built.group)))
    throw Error(ErrorKind::Contract, "cached filtration differs from recomputation");
  if (cached_filtration) *cached_filtration = cached;
  return built;
}

std::string Workspace::store_system(const MultSystem& s) {
  return store("systems", "", to_json(s).dump(1)).stem().string();
}

std::string Workspace::store_report(const Json& report) {
  // named by content without timings, so identical runs land on one file
  const auto name = fnv_hex(canonical_dump(report));
  write_file(root_ / "reports" / (name + ".json"), report.dump(1));
  return name;
}

}  // namespace zassen
