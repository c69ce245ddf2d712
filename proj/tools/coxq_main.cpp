// coxq: enumerate Bruhat-order parabolic quotients of Coxeter groups,
// analyze their chainlike structure, reconstruct the underlying graph from a
// bare poset, classify pairs of systems, and decompose reducible systems.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "coxq/catalog.hpp"
#include "coxq/chainlike.hpp"
#include "coxq/dot.hpp"
#include "coxq/isomorphism.hpp"
#include "coxq/poset.hpp"
#include "coxq/reconstruct.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw coxq::ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw coxq::ParseError("cannot open " + out_path + " for writing");
  out << text;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

// Loads either a poset JSON file or a graph text file (enumerating it).
coxq::Poset load_poset_arg(const std::string& path, int max_len,
                           std::uint64_t cap) {
  std::string text = read_file(path);
  if (looks_like_json(text)) return coxq::load_poset_json(text);
  return coxq::enumerate_quotient(coxq::parse_bw_graph(text), max_len, cap);
}

std::string label_or_e(const std::string& l) { return l.empty() ? "e" : l; }

int run_enumerate(const std::string& in, const std::string& out, int max_len,
                  std::uint64_t cap, const std::string& format) {
  coxq::Poset p =
      coxq::enumerate_quotient(coxq::parse_bw_graph(read_file(in)), max_len, cap);
  if (format == "dot")
    write_output(out, coxq::poset_dot(p));
  else
    write_output(out, coxq::save_poset_json(p));
  return 0;
}

int run_analyze(const std::string& in, const std::string& out, int max_len,
                std::uint64_t cap, const std::string& format) {
  coxq::Poset p = load_poset_arg(in, max_len, cap);
  coxq::Analyzer a(p);
  std::map<int, coxq::Form> forms;
  if (p.graph) forms = a.classify_all_forms();
  auto baskets = a.find_baskets();

  if (format == "json") {
    ordered_json j;
    j["elements"] = p.size();
    j["complete"] = p.complete;
    ordered_json chains = ordered_json::array();
    for (int v : a.chainlikes()) {
      ordered_json c;
      c["label"] = label_or_e(p.labels[v]);
      c["length"] = p.rank[v];
      c["parent"] = label_or_e(p.labels[a.parent(v)]);
      c["form"] = forms.count(v) ? coxq::form_name(forms.at(v)) : "?";
      chains.push_back(c);
    }
    j["chainlikes"] = chains;
    ordered_json bj = ordered_json::array();
    for (const auto& b : baskets)
      bj.push_back({label_or_e(p.labels[b.u]), label_or_e(p.labels[b.v])});
    j["baskets"] = bj;
    write_output(out, j.dump(2) + "\n");
    return 0;
  }

  std::ostringstream report;
  report << "elements: " << p.size() << (p.complete ? " (complete)" : " (truncated)")
         << "\nchainlike elements: " << a.chainlikes().size() << "\n";
  for (int v : a.chainlikes()) {
    report << "  " << label_or_e(p.labels[v]) << "  len=" << p.rank[v]
           << "  parent=" << label_or_e(p.labels[a.parent(v)]) << "  form="
           << (forms.count(v) ? coxq::form_name(forms.at(v)) : "?") << "\n";
  }
  report << "baskets: " << baskets.size() << "\n";
  for (const auto& b : baskets)
    report << "  {" << label_or_e(p.labels[b.u]) << ", "
           << label_or_e(p.labels[b.v]) << "}\n";
  write_output(out, report.str());
  return 0;
}

int run_reconstruct(const std::string& in, const std::string& out, int max_len,
                    std::uint64_t cap, const std::string& format, bool blind) {
  coxq::Poset p = load_poset_arg(in, max_len, cap);
  std::ostringstream report;
  auto emit = [&](const coxq::Reconstruction& r) {
    if (format == "dot")
      report << r.to_dot();
    else
      report << r.to_text();
  };
  if (blind) {
    coxq::BlindResolution res = coxq::resolve_forms_blind(p);
    if (res.assignments.empty())
      throw coxq::ConsistencyError("no consistent form assignment found");
    report << "# " << res.assignments.size() << " consistent reading(s)"
           << (res.exceptional ? " -- exceptional-pair ambiguity" : "") << "\n";
    for (size_t i = 0; i < res.assignments.size(); ++i) {
      report << "# reading " << i + 1 << "\n";
      emit(coxq::reconstruct(p, res.assignments[i]));
    }
  } else {
    if (!p.graph)
      throw coxq::ParseError(
          "input poset has no graph; use --blind for bare posets");
    coxq::Analyzer a(p);
    emit(coxq::reconstruct(p, a.classify_all_forms()));
  }
  write_output(out, report.str());
  return 0;
}

int run_classify(const std::string& in_a, const std::string& in_b,
                 const std::string& out) {
  coxq::BwGraph a = coxq::parse_bw_graph(read_file(in_a));
  coxq::BwGraph b = coxq::parse_bw_graph(read_file(in_b));
  coxq::Verdict v = coxq::classify_pair(a, b);
  ordered_json j;
  j["case"] = v.case_name;
  j["parameters"] = v.parameters;
  if (v.witness) {
    ordered_json w = ordered_json::array();
    for (auto [x, y] : *v.witness) w.push_back({x, y});
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["scope"] = v.scope;
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int run_decompose(const std::string& in, const std::string& out, int max_len,
                  std::uint64_t cap) {
  coxq::Poset p = load_poset_arg(in, max_len, cap);
  coxq::Decomposition d = coxq::decompose(p);
  ordered_json j;
  ordered_json comps = ordered_json::array();
  for (size_t i = 0; i < d.factors.size(); ++i) {
    ordered_json c;
    ordered_json atoms = ordered_json::array();
    for (int v : d.atom_components[i]) atoms.push_back(p.labels[v]);
    c["atoms"] = atoms;
    c["size"] = d.factors[i].size();
    c["complete"] = d.factors[i].complete;
    comps.push_back(c);
  }
  j["components"] = comps;
  j["trivialCount"] = d.trivial_count;
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int run_selftest() {
  using namespace coxq;
  struct Case {
    const char* name;
    bool ok;
  };
  std::vector<Case> results;
  {
    Poset p = enumerate_quotient(make_I2(6, {"2"}), 10);
    results.push_back({"I2(6)/A1 is a 6-chain",
                       p.complete && p.size() == 6 && p.covers.size() == 5});
  }
  {
    Poset p = enumerate_quotient(make_B(4, {"1"}), 20);
    results.push_back({"B4/A3 has 16 elements", p.complete && p.size() == 16});
  }
  {
    Poset h = enumerate_quotient(make_H(3, {"3"}), 20);
    Poset d = enumerate_quotient(make_D(6, {"1"}), 20);
    results.push_back(
        {"H3/H2 iso D6/D5", are_isomorphic(h, d).has_value()});
  }
  bool all = true;
  for (const auto& c : results) {
    std::cout << (c.ok ? "ok  " : "FAIL") << "  " << c.name << "\n";
    all &= c.ok;
  }
  return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bruhat-order parabolic quotients of Coxeter groups"};
  app.require_subcommand(1);

  int max_len = coxq::kDefaultMaxLength;
  std::uint64_t closure_cap = coxq::kDefaultClosureCap;
  std::string format = "json";
  std::string out_path;
  std::string batch_dir;
  bool blind = false;
  std::string in_a, in_b;

  auto add_common = [&](CLI::App* cmd, bool with_format_default_text = false) {
    cmd->add_option("--max-len", max_len, "truncation length")
        ->capture_default_str();
    cmd->add_option("--closure-cap", closure_cap, "braid closure word cap");
    cmd->add_option("--format", format, "output format: json|dot|text");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    if (with_format_default_text) format = "text";
  };

  auto* c_enum = app.add_subcommand("enumerate", "enumerate a quotient poset");
  c_enum->add_option("graph", in_a, "graph file")->required();
  c_enum->add_option("--batch", batch_dir, "enumerate every *.graph in a directory");
  add_common(c_enum);

  auto* c_analyze = app.add_subcommand("analyze", "chainlike/basket report");
  c_analyze->add_option("input", in_a, "poset JSON or graph file")->required();
  add_common(c_analyze, true);

  auto* c_recon = app.add_subcommand("reconstruct", "rebuild the graph from a poset");
  c_recon->add_option("input", in_a, "poset JSON or graph file")->required();
  c_recon->add_flag("--blind", blind, "resolve forms without the word model");
  add_common(c_recon, true);

  auto* c_classify = app.add_subcommand("classify", "verdict for two graphs");
  c_classify->add_option("graphA", in_a, "first graph file")->required();
  c_classify->add_option("graphB", in_b, "second graph file")->required();
  c_classify->add_option("--out", out_path, "output file (default stdout)");

  auto* c_decomp = app.add_subcommand("decompose", "split a reducible quotient");
  c_decomp->add_option("input", in_a, "poset JSON or graph file")->required();
  add_common(c_decomp);

  app.add_subcommand("selftest", "run built-in sanity checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_enum->parsed()) {
      if (!batch_dir.empty()) {
        namespace fs = std::filesystem;
        for (const auto& entry : fs::directory_iterator(batch_dir)) {
          if (entry.path().extension() != ".graph") continue;
          fs::path out = entry.path();
          out.replace_extension(".poset.json");
          run_enumerate(entry.path().string(), out.string(), max_len,
                        closure_cap, format);
        }
        return 0;
      }
      return run_enumerate(in_a, out_path, max_len, closure_cap, format);
    }
    if (c_analyze->parsed())
      return run_analyze(in_a, out_path, max_len, closure_cap, format);
    if (c_recon->parsed())
      return run_reconstruct(in_a, out_path, max_len, closure_cap, format,
                             blind);
    if (c_classify->parsed()) return run_classify(in_a, in_b, out_path);
    if (c_decomp->parsed())
      return run_decompose(in_a, out_path, max_len, closure_cap);
    return run_selftest();
  } catch (const coxq::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const coxq::ResourceError& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const coxq::ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
