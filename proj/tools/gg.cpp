// gg: command-line front end.

#include "gkz/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace gkz;

namespace {

constexpr const char* kVersion = "gg 1.0";

enum Exit { Ok = 0, Invalid = 2, VerificationFailed = 3, NotConverged = 4 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConverged:
    case ErrorCode::QuadratureNotConverged:
    case ErrorCode::MarginTooSmall:
    case ErrorCode::BudgetExceeded:
      return NotConverged;
    default:
      return Invalid;
  }
}

// Raw option strings; parsed once the matrix is known.
struct Raw {
  std::string weight, from, to, fromWeight, toWeight, args, r, c, abs, cell, k;
  std::optional<double> shift;
  bool json = false, perturb = false, residues = false;
};

Subdivision pick(const Configuration& A, const std::optional<std::vector<IndexSet>>& cells,
                 const std::optional<RatVector>& weight, const char* which) {
  if (cells) return make_subdivision(A, *cells);
  if (weight) {
    if (weight->size() != A.N()) throw Error(ErrorCode::InvalidInput, "weight needs one entry per column");
    return regular_subdivision(A, *weight);
  }
  throw Error(ErrorCode::InvalidInput, std::string("--") + which + " or --" + which + "-weight is required");
}

std::string cells_text(const std::vector<IndexSet>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? " " : "") + label_string(cells[i]);
  return out;
}

std::string complex_text(cplx z) {
  std::ostringstream out;
  out << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::fabs(z.imag()) << "i";
  return out.str();
}

struct Result {
  json data;
  std::string text;
  int code = Ok;
};

Result run(const RunConfig& cfg, const Raw& raw) {
  Configuration A = read_matrix(cfg.matrix);
  Result res;
  std::ostringstream text;
  const std::string& cmd = cfg.command;

  if (cmd == "rank") {
    const Integer vol = normalized_volume(A), index = lattice_index(A), rank = rank_gg(A);
    res.data = json{{"volume", to_json(vol)}, {"index", to_json(index)}, {"rank", to_json(rank)}};
    text << "volume " << vol << "\nindex  " << index << "\nrank   " << rank << "\n";
  } else if (cmd == "triangulate") {
    if (!cfg.weight) throw Error(ErrorCode::InvalidInput, "--weight is required");
    if (cfg.weight->size() != A.N()) throw Error(ErrorCode::InvalidInput, "weight needs one entry per column");
    Subdivision S = regular_subdivision(A, *cfg.weight, raw.perturb);
    res.data = to_json(S);
    text << cells_text(S.cells) << (S.isTriangulation ? "  (triangulation)" : "") << "\n";
  } else if (cmd == "fan") {
    FlipGraph g = flip_graph(A, cfg.maxNodes);
    json nodes = json::array(), edges = json::array();
    for (const auto& n : g.nodes) nodes.push_back(to_json(n));
    for (const auto& e : g.edges) edges.push_back(json{{"from", e.from}, {"to", e.to}, {"circuit", to_json(e.circuit)}});
    res.data = json{{"nodes", nodes}, {"edges", edges}, {"truncated", g.truncated}};
    for (std::size_t i = 0; i < g.nodes.size(); ++i) text << "T" << i << ": " << cells_text(g.nodes[i].cells) << "\n";
    for (const auto& e : g.edges)
      text << "T" << e.from << " -> T" << e.to << " along " << label_string(e.circuit.Z) << "\n";
    if (g.truncated) text << "(truncated)\n";
  } else if (cmd == "circuits") {
    json list = json::array();
    for (const auto& c : find_circuits(A)) {
      list.push_back(to_json(c));
      text << label_string(c.Z) << "  u = " << to_json(c.u).dump() << "\n";
    }
    res.data = json{{"circuits", list}};
  } else if (cmd == "facets") {
    json list = json::array();
    Integer total = 0;
    for (const auto& f : facets_off_origin(A)) {
      list.push_back(to_json(f));
      total += f.volume;
      text << label_string(f.labels) << "  volume " << f.volume << "\n";
    }
    res.data = json{{"facets", list}, {"volume", to_json(total)}, {"rank", to_json(rank_gg(A))}};
    text << "total " << total << "\n";
  } else if (cmd == "modify") {
    Modification m = modification(A, pick(A, cfg.from, cfg.fromWeight, "from"), pick(A, cfg.to, cfg.toWeight, "to"));
    SectorWindow w = common_sector(A, m);
    res.data = json{{"modification", to_json(m)}, {"sector", to_json(w)}};
    text << "circuit " << label_string(m.circuit.Z) << "  Z+ = " << label_string(m.circuit.plus)
         << "  Z- = " << label_string(m.circuit.minus) << "\ncells   " << cells_text(m.cells) << "\nunchanged "
         << cells_text(m.irrelevant) << "\nsector  " << to_string(w.lo) << " pi < Theta < " << to_string(w.hi)
         << " pi\n";
  } else if (cmd == "connect" || cmd == "path" || cmd == "verify") {
    Modification m = modification(A, pick(A, cfg.from, cfg.fromWeight, "from"), pick(A, cfg.to, cfg.toWeight, "to"));
    ConnectionMatrix cm = build_connection(A, m, cfg.j0);
    if (cmd == "connect") {
      res.data = to_json(cm);
      for (std::size_t r = 0; r < cm.source.size(); ++r) {
        text << series_label(cm.source[r]) << " ~>";
        bool first = true;
        for (std::size_t k = 0; k < cm.target.size(); ++k) {
          if (cm.entries[r][k].is_zero()) continue;
          text << (first ? " " : "\n      + ") << "[" << to_string(cm.entries[r][k]) << "] "
               << series_label(cm.target[k]);
          first = false;
        }
        text << "\n";
      }
      return {res.data, text.str(), Ok};
    }
    PathOptions po;
    po.args = cfg.args;
    po.r = cfg.r;
    po.target = cfg.target;
    PathSpec path = build_path(A, m, po);
    if (cmd == "path") {
      res.data = to_json(path);
      text << "r = " << to_string(path.r) << "\nsector margin " << path.sectorMargin << "\nseries coordinates "
           << path.startSeriesCoordinate << " / " << path.endSeriesCoordinate << "\nexpansion coordinate "
           << path.expansionCoordinate << "\n";
      return {res.data, text.str(), Ok};
    }
    Eigen::VectorXcd c = cfg.c ? *cfg.c : default_parameters(A.n(), cfg.seed);
    if (c.size() != A.n()) throw Error(ErrorCode::InvalidInput, "c needs one entry per row");
    VerifyOptions vo;
    vo.order = cfg.order;
    vo.tol = cfg.tol;
    vo.quad = cfg.quad;
    vo.budget = cfg.budget;
    VerifyReport rep = verify_connection(A, cm, path, c, vo);
    res.data = json{{"c", to_json(c)}, {"path", to_json(path)}, {"report", to_json(rep)}};
    bool converged = true;
    for (const auto& row : rep.rows) {
      converged = converged && row.converged;
      text << std::left << std::setw(28) << row.label << " defect " << std::setprecision(3) << row.defect()
           << (row.converged ? "" : "  (" + row.error + ")") << "\n";
    }
    text << (rep.ok ? "ok" : "FAILED") << ", max defect " << rep.maxDefect << " at order " << rep.order << "\n";
    res.code = !converged ? NotConverged : (rep.ok ? Ok : VerificationFailed);
  } else if (cmd == "mb") {
    if (!cfg.cell || !cfg.j0) throw Error(ErrorCode::InvalidInput, "--cell and --j0 are required");
    if (!cfg.absz || !cfg.args) throw Error(ErrorCode::InvalidInput, "--abs and --args are required");
    if (cfg.absz->size() != A.N() || cfg.args->size() != A.N())
      throw Error(ErrorCode::InvalidInput, "one |z| and one argument per column");
    if ((cfg.absz->array() <= 0).any()) throw Error(ErrorCode::InvalidInput, "|z| must be positive");
    MBIntegrand ig(A, *cfg.cell, *cfg.j0, cfg.ktilde ? *cfg.ktilde : IntVector());
    LogPoint z = LogPoint::from_polar(cfg.absz->array().log().matrix(), *cfg.args);
    Eigen::VectorXcd c = cfg.c ? *cfg.c : default_parameters(A.n(), cfg.seed);
    if (c.size() != A.n()) throw Error(ErrorCode::InvalidInput, "c needs one entry per row");
    MBValue v = mb_evaluate(ig, z, c, cfg.quad);
    res.data = to_json(v);
    res.data["c"] = to_json(c);
    text << "value   " << complex_text(v.value) << "\nestimate " << v.estimate << "\nsector margin "
         << v.sectorMargin << "\n";
    if (raw.residues) {
      auto attempt = [&](auto f) -> json {
        try {
          return to_json(f());
        } catch (const Error& e) {
          return json{{"error", std::string(name(e.code()))}, {"message", e.message()}};
        }
      };
      res.data["residuesPositive"] = attempt([&] { return residues_positive(ig, z, c, cfg.order); });
      res.data["residuesNegative"] = attempt([&] { return residues_negative(ig, z, c, cfg.order); });
      text << "residues+ " << res.data["residuesPositive"].dump() << "\nresidues- "
           << res.data["residuesNegative"].dump() << "\n";
    }
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown command " + cmd);
  }
  res.text = text.str();
  return res;
}

void emit(const std::string& out, const std::string& body) {
  if (out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + out);
  f << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma series, secondary fans and connection matrices of GKZ systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  Raw raw;
  std::map<std::string, CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"rank", "volume, lattice index and rank of the GG system"},
      {"triangulate", "regular subdivision induced by a weight"},
      {"fan", "regular triangulations and their adjacency"},
      {"circuits", "all circuits of the configuration"},
      {"modify", "the modification between two adjacent triangulations"},
      {"connect", "exact connection matrix between two adjacent triangulations"},
      {"path", "continuation path for a connection"},
      {"verify", "numerical check of a connection matrix along its path"},
      {"facets", "facets of the Newton polytope off the origin"},
      {"mb", "Mellin-Barnes integral of a circuit"}};
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    subs[name] = s;
    s->add_option("--matrix", cfg.matrix, "configuration matrix file (text rows or JSON)")->required();
    s->add_option("--out", cfg.out, "write output to this file");
    s->add_flag("--json", raw.json, "JSON output (default)");
    s->add_flag("--pretty", cfg.pretty, "human-readable output");
    s->add_option("--seed", cfg.seed, "seed for default parameters");
  }
  subs["triangulate"]->add_option("--weight", raw.weight, "weight vector, e.g. \"1/2,0,3,1,1\"")->required();
  subs["triangulate"]->add_flag("--perturb", raw.perturb, "break ties so the result is a triangulation");
  subs["fan"]->add_option("--max-nodes", cfg.maxNodes, "stop after this many triangulations");
  for (const char* name : {"modify", "connect", "path", "verify"}) {
    CLI::App* s = subs[name];
    s->add_option("--from", raw.from, "source triangulation, cells separated by ';'");
    s->add_option("--to", raw.to, "target triangulation");
    s->add_option("--from-weight", raw.fromWeight, "source triangulation as a weight");
    s->add_option("--to-weight", raw.toWeight, "target triangulation as a weight");
  }
  for (const char* name : {"connect", "path", "verify"}) subs[name]->add_option("--j0", cfg.j0, "Z+ column kept upper in the target");
  for (const char* name : {"path", "verify"}) {
    CLI::App* s = subs[name];
    s->add_option("--args", raw.args, "arguments of z in radians");
    s->add_option("--r", raw.r, "multiplier of omega_Q");
    s->add_option("--target", cfg.target, "bound for the local coordinates at the endpoints");
  }
  for (const char* name : {"verify", "mb"}) {
    CLI::App* s = subs[name];
    s->add_option("--c", raw.c, "parameters, e.g. \"0.31,0.27+0.1i,-0.43\"");
    s->add_option("--order", cfg.order, "truncation order");
    s->add_option("--shift", raw.shift, "real part of the contour");
    s->add_option("--step", cfg.quad.step, "quadrature step");
    s->add_option("--height", cfg.quad.height, "quadrature half height");
    s->add_option("--qtol", cfg.quad.tol, "quadrature tolerance");
  }
  subs["verify"]->add_option("--tol", cfg.tol, "largest acceptable relative defect");
  subs["verify"]->add_option("--budget", cfg.budget, "largest number of Mellin-Barnes evaluations");
  subs["mb"]->add_option("--cell", raw.cell, "corank-1 cell")->required();
  subs["mb"]->add_option("--j0", cfg.j0, "Z+ column removed from the cell")->required();
  subs["mb"]->add_option("--k", raw.k, "representative aligned with the simplex");
  subs["mb"]->add_option("--abs", raw.abs, "|z_j|");
  subs["mb"]->add_option("--args", raw.args, "arguments of z in radians");
  subs["mb"]->add_flag("--residues", raw.residues, "also sum the residues up to --order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Invalid;
  }
  for (const auto& [name, s] : subs)
    if (s->parsed()) cfg.command = name;
  if (raw.json && cfg.pretty) {
    std::cerr << "--json and --pretty exclude each other\n";
    return Invalid;
  }

  int code = Ok;
  std::string body;
  try {
    Configuration A = read_matrix(cfg.matrix);
    if (!raw.weight.empty()) cfg.weight = parse_rational_list(raw.weight);
    if (!raw.from.empty()) cfg.from = parse_cells(raw.from, A.N());
    if (!raw.to.empty()) cfg.to = parse_cells(raw.to, A.N());
    if (!raw.fromWeight.empty()) cfg.fromWeight = parse_rational_list(raw.fromWeight);
    if (!raw.toWeight.empty()) cfg.toWeight = parse_rational_list(raw.toWeight);
    if (!raw.args.empty()) cfg.args = parse_real_list(raw.args);
    if (!raw.r.empty()) {
      cfg.r = parse_rational(raw.r);
      if (*cfg.r <= 0) throw Error(ErrorCode::InvalidInput, "--r must be positive");
    }
    if (!raw.c.empty()) cfg.c = parse_complex_list(raw.c);
    if (!raw.abs.empty()) cfg.absz = parse_real_list(raw.abs);
    if (!raw.cell.empty()) cfg.cell = parse_labels(raw.cell, A.N());
    if (!raw.k.empty()) {
      RatVector k = parse_rational_list(raw.k);
      if (!all_integral(k)) throw Error(ErrorCode::InvalidInput, "--k must be integral");
      IntVector ki(k.size());
      for (Eigen::Index i = 0; i < k.size(); ++i) ki(i) = mp::numerator(k(i));
      cfg.ktilde = ki;
    }
    if (raw.shift) cfg.quad.shift = raw.shift;
    if (cfg.order < 0) throw Error(ErrorCode::InvalidInput, "--order must be non-negative");

    Result res = run(cfg, raw);
    code = res.code;
    if (cfg.pretty) {
      body = res.text;
    } else {
      json doc{{"version", kVersion}, {"command", cfg.command}, {"config", to_json(cfg)}, {"result", res.data}};
      body = doc.dump(2) + "\n";
    }
  } catch (const Error& e) {
    code = exit_code(e.code());
    std::cerr << "gg: " << e.what() << "\n";
    json doc{{"version", kVersion},
             {"command", cfg.command},
             {"error", {{"code", std::string(name(e.code()))}, {"message", e.message()}, {"exit", code}}}};
    body = cfg.pretty ? "" : doc.dump(2) + "\n";
  } catch (const std::exception& e) {
    code = Invalid;
    std::cerr << "gg: " << e.what() << "\n";
    json doc{{"version", kVersion}, {"command", cfg.command}, {"error", {{"code", "InvalidInput"}, {"message", e.what()}, {"exit", code}}}};
    body = cfg.pretty ? "" : doc.dump(2) + "\n";
  }
  try {
    emit(cfg.out, body);
  } catch (const Error& e) {
    std::cerr << "gg: " << e.what() << "\n";
    return Invalid;
  }
  return code;
}
