#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fuzzykb/io.hpp"

namespace {

using namespace fuzzykb;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

Kb load_kb(const std::string& path) { return parse_kb(read_file(path)); }

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// A name on the CLI resolves to either a learned user area or a system value.
struct Resolved {
  const FuzzyArea* user = nullptr;
  const SystemValue* system = nullptr;
};

Resolved resolve_name(const SemanticNet& net, const std::string& name) {
  Resolved r;
  if (auto it = net.lexicon().find(name); it != net.lexicon().end()) {
    r.user = &it->second.second;
    return r;
  }
  for (const auto& [an, attr] : net.attributes())
    if (const SystemValue* v = attr.find(name)) {
      r.system = v;
      return r;
    }
  throw UnknownLabel(name);
}

const FuzzyArea& side_area(const Resolved& r, AreaKind side) {
  if (r.user) return *r.user;
  return side == AreaKind::necessary ? r.system->necessary() : r.system->possible();
}

double compute_deg(const SemanticNet& net, const std::string& from, const std::string& to,
                   const std::string& mode) {
  Resolved f = resolve_name(net, from);
  Resolved t = resolve_name(net, to);
  if (mode == "n")
    return deg_area_inclusion(side_area(f, AreaKind::necessary), side_area(t, AreaKind::necessary))
        .value();
  if (mode == "p")
    return deg_area_inclusion(side_area(f, AreaKind::possible), side_area(t, AreaKind::possible))
        .value();
  if (f.system && t.system) return deg_system_value_inclusion(*f.system, *t.system).value();
  double n = deg_area_inclusion(side_area(f, AreaKind::necessary), side_area(t, AreaKind::necessary))
                 .value();
  double p = deg_area_inclusion(side_area(f, AreaKind::possible), side_area(t, AreaKind::possible))
                 .value();
  return (n + p) / 2.0;
}

void print_match(std::ostream& os, const MatchResult& result) {
  os << "target             degree  (N, P)\n";
  for (const auto& e : result.entries)
    os << e.target << std::string(e.target.size() < 19 ? 19 - e.target.size() : 1, ' ')
       << fmt3(e.degree.value()) << "   (" << fmt3(e.couple.necessity.value()) << ", "
       << fmt3(e.couple.possibility.value()) << ")\n";
}

int run_repl(Kb& kb, std::istream& in, std::ostream& os, const std::string& save_path) {
  std::string line;
  os << "kb> " << std::flush;
  while (std::getline(in, line)) {
    if (line == ":quit") break;
    std::istringstream ls(line);
    std::string goal, object;
    ls >> goal >> object;
    if (goal.empty()) {
      os << "kb> " << std::flush;
      continue;
    }
    std::optional<std::string> object_label;
    if (!object.empty()) object_label = object;
    try {
      print_match(os, kb.net.match_query(goal, object_label));
    } catch (const UnknownLabel& e) {
      os << "unknown label '" << goal << "'\n";
      os << "attribute> " << std::flush;
      std::string attr;
      if (!std::getline(in, attr)) break;
      os << "enter (value degree) pairs, blank line to finish\n";
      std::vector<std::pair<std::string, double>> entries;
      bool aborted = false;
      while (true) {
        os << "area> " << std::flush;
        std::string pair_line;
        if (!std::getline(in, pair_line) || pair_line.empty()) break;
        std::istringstream ps(pair_line);
        std::string value;
        double degree;
        if (!(ps >> value >> degree)) {
          os << "error: expected 'value degree'\n";
          aborted = true;
          break;
        }
        entries.emplace_back(value, degree);
      }
      if (!aborted) {
        try {
          auto it = kb.net.attributes().find(attr);
          if (it == kb.net.attributes().end()) throw UnknownAttribute(attr);
          kb.net.learn_user_label(goal, attr,
                                  make_area(AreaKind::user, it->second.domain(), entries));
          os << "learned '" << goal << "'\n";
          print_match(os, kb.net.match_query(goal, object_label));
        } catch (const KbError& le) {
          os << "error: " << le.what() << "\n";
        }
      }
    } catch (const KbError& e) {
      os << "error: " << e.what() << "\n";
    }
    os << "kb> " << std::flush;
  }
  os << "bye\n";
  if (!save_path.empty()) write_file(save_path, serialize_kb(kb.net, kb.context));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy knowledge-base tool"};
  app.require_subcommand(1);

  std::string kb_path, context_path, dot_path, from, to, mode = "avg";
  std::string goal, object, instance, save_path;

  auto* lattice_cmd = app.add_subcommand("lattice", "lattice operations");
  auto* lattice_build = lattice_cmd->add_subcommand("build", "build the concept lattice");
  lattice_build->add_option("--context", context_path, "context JSON file")->required();
  lattice_build->add_option("--dot", dot_path, "write DOT output to file ('-' for stdout)");

  auto* deg_cmd = app.add_subcommand("deg", "inclusion degree between two names");
  deg_cmd->add_option("--kb", kb_path)->required();
  deg_cmd->add_option("--from", from)->required();
  deg_cmd->add_option("--to", to)->required();
  deg_cmd->add_option("--mode", mode)->check(CLI::IsMember({"n", "p", "avg"}));

  auto* match_cmd = app.add_subcommand("match", "match a query against the KB");
  match_cmd->add_option("--kb", kb_path)->required();
  match_cmd->add_option("--goal", goal)->required();
  match_cmd->add_option("--object", object);

  auto* classify_cmd = app.add_subcommand("classify", "rank classes for an instance");
  classify_cmd->add_option("--kb", kb_path)->required();
  classify_cmd->add_option("--instance", instance)->required();

  auto* repl_cmd = app.add_subcommand("repl", "interactive query session");
  repl_cmd->add_option("--kb", kb_path)->required();
  repl_cmd->add_option("--save", save_path, "write the KB back on exit");

  auto* validate_cmd = app.add_subcommand("validate", "parse and validate a KB file");
  validate_cmd->add_option("--kb", kb_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (lattice_build->parsed()) {
      fuzzykb::json doc = fuzzykb::json::parse(read_file(context_path));
      fuzzykb::BinaryContext ctx =
          doc.contains("context") ? fuzzykb::parse_context(doc["context"])
                                  : fuzzykb::parse_context(doc);
      fuzzykb::ConceptLattice lat = fuzzykb::build_lattice(ctx);
      std::cout << "concepts: " << lat.concepts.size() << "\n";
      std::cout << "hasse edges: " << lat.hasse.size() << "\n";
      for (std::size_t i = 0; i < lat.concepts.size(); ++i) {
        std::cout << "c" << i << ": {";
        bool first = true;
        for (const auto& o : lat.concepts[i].extent) {
          if (!first) std::cout << ",";
          std::cout << o;
          first = false;
        }
        std::cout << "} | {";
        first = true;
        for (const auto& p : lat.concepts[i].intent) {
          if (!first) std::cout << ",";
          std::cout << p;
          first = false;
        }
        std::cout << "}\n";
      }
      if (!dot_path.empty()) {
        std::string dot = fuzzykb::export_dot(lat);
        if (dot_path == "-")
          std::cout << dot;
        else
          write_file(dot_path, dot);
      }
    } else if (deg_cmd->parsed()) {
      Kb kb = load_kb(kb_path);
      std::cout << fmt3(compute_deg(kb.net, from, to, mode)) << "\n";
    } else if (match_cmd->parsed()) {
      Kb kb = load_kb(kb_path);
      std::optional<std::string> obj;
      if (!object.empty()) obj = object;
      print_match(std::cout, kb.net.match_query(goal, obj));
    } else if (classify_cmd->parsed()) {
      Kb kb = load_kb(kb_path);
      for (const auto& [cls, deg] : kb.net.classify_instance(instance))
        std::cout << cls << std::string(cls.size() < 19 ? 19 - cls.size() : 1, ' ')
                  << fmt3(deg.value()) << "\n";
    } else if (repl_cmd->parsed()) {
      Kb kb = load_kb(kb_path);
      return run_repl(kb, std::cin, std::cout, save_path);
    } else if (validate_cmd->parsed()) {
      load_kb(kb_path);
      std::cout << "ok\n";
    }
  } catch (const fuzzykb::KbError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
