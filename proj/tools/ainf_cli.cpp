// Command-line front end: one subcommand per engine operation, JSON reports on stdout.

#include <ainf/invariants.hpp>
#include <ainf/io.hpp>
#include <ainf/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ainf;

namespace {

struct Input {
  std::string text;
  Presentation presentation;
  std::optional<DgAlgebra> dg;  // set unless the file carries operations of arity >= 3
  AInfAlgebra ainf;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses and validates; axiom failures become errors carrying the first witness.
Input load(const std::string& path) {
  Input in;
  in.text = read_file(path);
  in.presentation = parse_presentation(in.text);
  in.ainf = build_ainf(in.presentation);
  if (in.presentation.is_ainf()) {
    auto d = verify_ainf(in.ainf, default_arity_check(in.ainf));
    if (!d.valid()) throw DomainError("invalid A-infinity structure: " + d.summary());
  } else {
    in.dg = build_dg(in.presentation);
    auto d = verify_dg(*in.dg);
    if (!d.valid()) throw DomainError("invalid DG-algebra: " + d.summary());
  }
  return in;
}

const DgAlgebra& require_dg(const Input& in, const std::string& what) {
  if (!in.dg) throw DomainError(what + " needs a DG-algebra; this file has higher operations");
  return *in.dg;
}

ojson window_json(const CohomologyWindow& w) {
  ojson out;
  out["lo"] = w.lo;
  out["hi"] = w.hi;
  out["dimensions"] = degree_map_json(w.dims);
  out["cochain_dimensions"] = degree_map_json(w.cochain_dims);
  ojson reps = ojson::object();
  for (const auto& [i, r] : w.representatives) reps[std::to_string(i)] = r;
  out["representatives"] = reps;
  out["d_squared_zero"] = w.d_squared_zero;
  return out;
}

ojson smooth_json(const SmoothnessVerdict& v) {
  ojson out;
  out["verdict"] = to_string(v.kind);
  if (v.kind != SmoothnessVerdict::Kind::Unknown) out["length"] = v.length;
  out["witness"] = v.witness;
  out["reduction"] = v.reduction;
  ojson res = ojson::array();
  for (const auto& r : v.resolutions) {
    ojson one;
    one["simple"] = r.vertex + 1;
    ojson steps = ojson::array();
    for (const auto& s : r.steps) {
      ojson st;
      ojson gens = ojson::array();
      for (auto [vert, deg] : s.generators) gens.push_back({{"vertex", vert + 1}, {"degree", deg}});
      st["projective_summands"] = gens;
      st["syzygy_dim"] = s.syzygy_dim;
      steps.push_back(st);
    }
    one["steps"] = steps;
    if (r.repeat) {
      one["repeat"] = {r.repeat->first, r.repeat->second};
      one["shift"] = r.repeat_shift;
      one["certificate_replays"] = check_isomorphism_certificate(r);
    }
    res.push_back(one);
  }
  out["resolutions"] = res;
  return out;
}

AInfAlgebra minimal_structure(const Input& in, std::vector<std::string>& hyp) {
  if (in.ainf.minimal()) return in.ainf;
  const auto& dg = require_dg(in, "minimal model");
  hyp.push_back("computed on the minimal model (input has a nonzero differential)");
  return homotopy_transfer(dg, retraction_for(dg, in.presentation), default_transfer_cap(dg));
}

SmoothnessStatus smoothness_for(const Input& in, bool assume_flag, std::size_t steps, std::vector<std::string>& hyp) {
  if (assume_flag || in.presentation.assumes("smooth")) {
    hyp.push_back("smoothness assumed by declaration");
    return SmoothnessStatus::Assumed;
  }
  if (!in.dg || !in.dg->algebra().connective()) return SmoothnessStatus::Unknown;
  return status_of(smoothness_probe(*in.dg, steps));
}

// ---- subcommands ---------------------------------------------------------------------------------

void cmd_validate(const Input& in, Report& r) {
  auto& p = in.presentation;
  r.result["kind"] = in.dg ? "dg" : "ainf";
  r.result["field"] = p.field.to_string();
  r.result["dimension"] = p.basis.size();
  r.result["max_arity"] = in.ainf.max_arity();
  r.result["valid"] = true;
}

void cmd_cohomology(const Input& in, Report& r) {
  const auto& dg = require_dg(in, "cohomology");
  auto coh = cohomology_algebra(dg);
  auto pred = predicates(dg);
  r.result["dimensions"] = degree_map_json(pred.cohomology_dimensions);
  ojson basis = ojson::array();
  for (std::size_t i = 0; i < coh.algebra.dim(); ++i)
    basis.push_back({{"name", coh.algebra.basis()[i].name},
                     {"degree", coh.algebra.degree(i)},
                     {"representative", format_element(dg.algebra().basis(), coh.representatives[i])}});
  r.result["basis"] = basis;
  r.result["proper"] = pred.proper;
  r.result["connective"] = pred.connective;
  r.result["amplitude"] = pred.amplitude ? ojson(*pred.amplitude) : ojson("undefined");
}

void cmd_truncate(const Input& in, Report& r) {
  const auto& dg = require_dg(in, "truncate");
  auto t = truncate_connective(dg);
  r.result["dimension"] = t.dim();
  r.result["cohomology_before"] = degree_map_json(predicates(dg).cohomology_dimensions);
  r.result["cohomology_after"] = degree_map_json(predicates(t).cohomology_dimensions);
  r.result["algebra"] = ojson::parse(to_json(to_presentation(AInfAlgebra::from_dg(t), "dg")).dump());
}

void cmd_minimal_model(const Input& in, int cap, Report& r) {
  const auto& dg = require_dg(in, "minimal-model");
  auto ret = retraction_for(dg, in.presentation);
  int c = cap > 0 ? cap : default_transfer_cap(dg);
  auto t = transfer_with_morphism(dg, ret, c);
  auto diag = verify_ainf(t.model, std::min(64, c + 2));
  r.result["arity_cap"] = c;
  r.result["dimension"] = t.model.dim();
  r.result["max_arity"] = t.model.max_arity();
  r.result["retraction_valid"] = verify_retraction(dg, ret).valid();
  r.result["stasheff_valid"] = diag.valid();
  auto morphism = check_transfer_morphism(dg, t, c);
  r.result["morphism_valid"] = !morphism.has_value();
  r.result["algebra"] = ojson::parse(to_json(to_presentation(t.model, "ainf")).dump());
  if (!dg.algebra().connective()) r.hypotheses.push_back("not connective: operations above the arity cap are truncated");
}

void cmd_trees(std::size_t n, std::size_t max_arity, bool stats, Report& r) {
  if (n == 0) throw DomainError("--n must be positive");
  std::size_t ar = max_arity ? max_arity : n;
  r.result["n"] = n;
  r.result["max_arity"] = ar;
  r.result["count"] = count_trees(n, ar).get_str();
  if (!stats) return;
  if (n > 10) throw DomainError("--stats lists every tree; use n <= 10");
  r.result["columns"] = {"psi", "v", "|psi|"};
  ojson rows = ojson::array();
  std::map<std::string, std::size_t> hist;
  for (const auto& t : enumerate_psi(n, ar)) {
    auto s = tree_stats(t);
    rows.push_back({t.to_string(), s.v, s.abs_degree});
    ++hist["(" + std::to_string(s.v) + "," + std::to_string(s.abs_degree) + ")"];
  }
  r.result["rows"] = rows;
  r.result["histogram"] = hist;
}

void cmd_filtration(const Input& in, std::size_t k_max, Report& r) {
  auto a = minimal_structure(in, r.hypotheses);
  auto f = compute_filtration(a, k_max);
  const auto& B = a.basis();
  ojson layers = ojson::array();
  for (std::size_t k = 0; k <= f.k_max(); ++k) {
    ojson layer;
    layer["k"] = k;
    layer["dim"] = f.layers[k].dim();
    layer["basis"] = subspace_json(B, f.layers[k]);
    ojson trees = ojson::array();
    if (k >= 1 && k < f.words.size() && k < f.k_max()) {
      Subspace seen = f.layers[k + 1];
      for (const auto& w : f.words[k]) {
        if (!seen.insert(w.value)) continue;
        ojson inputs = ojson::array();
        for (auto i : w.inputs) inputs.push_back(format_element(B, f.j_basis[i]));
        trees.push_back({{"tree", w.tree.to_string()}, {"inputs", inputs}, {"value", format_element(B, w.value)}});
      }
    }
    layer["new_elements"] = trees;
    layers.push_back(layer);
  }
  r.result["layers"] = layers;
  r.result["exact"] = f.exact();
  if (!f.exact()) r.hypotheses.push_back("layers beyond the computed word length are lower bounds");

  auto inf = detect_infinite(a, k_max);
  if (inf.finite) {
    r.result["verdict"] = "Finite(" + std::to_string(inf.k) + ")";
  } else {
    r.result["verdict"] = "PersistsThrough(" + std::to_string(inf.k) + ")";
    if (inf.witness) r.result["witness"] = {{"tree", inf.witness->tree.to_string()}, {"value", format_element(B, inf.witness->value)}};
  }
  auto rad = check_radical_preserved(a);
  r.result["radical_preserved"] = rad.holds;
  if (!rad.holds) r.result["radical_witness"] = rad.witness;
  r.result["f1_equals_j"] = check_f1_equals_j(f).holds;
  if (a.connective()) {
    auto b = vanishing_bound(a);
    r.result["vanishing_bound"] = {{"n0", b.n0}, {"loewy", b.loewy}, {"n1", b.n1}, {"n2", b.n2}, {"N", b.N}};
  } else {
    r.hypotheses.push_back("not connective: no vanishing bound");
  }
  try {
    auto c = check_compatibility(a, f, 4);
    r.result["compatible"] = c.holds;
    if (!c.holds) r.result["compatibility_witness"] = c.witness;
  } catch (const DomainError& e) {
    r.result["compatible"] = nullptr;
    r.hypotheses.push_back(std::string("compatibility skipped: ") + e.what());
  }
}

void cmd_k0(const Input& in, Report& r) {
  auto k = in.dg ? k0_rank(*in.dg) : k0_rank(in.ainf);
  r.result["rank"] = k.rank;
  r.result["h0_dim"] = k.h0_dim;
  r.result["simples"] = k.simple_labels;
}

void cmd_motive(const Input& in, bool assume_smooth, Report& r) {
  auto k = in.dg ? k0_rank(*in.dg) : k0_rank(in.ainf);
  bool connective = in.dg ? predicates(*in.dg).connective : in.ainf.connective();
  auto m = motive_report(k, connective, smoothness_for(in, assume_smooth, 8, r.hypotheses));
  r.result["motive"] = m.target;
  r.result["split_rank"] = *m.split_rank;
  r.result["smoothness"] = to_string(m.smoothness);
  r.result["connective"] = m.connective;
  r.result["hypotheses_met"] = m.hypotheses_met;
  for (const auto& flag : m.flags) r.hypotheses.push_back(flag);
}

void cmd_hh(const Input& in, int lo, int hi, Report& r) {
  r.result = window_json(hochschild_window(require_dg(in, "hh"), lo, hi));
}

void cmd_ext(const Input& in, int lo, int hi, Report& r) {
  const auto& dg = require_dg(in, "ext");
  auto e = ext_window(dg, lo, hi);
  r.result = window_json(e.window);
  r.result["b_dim"] = e.b_dim;
  if (e.h0_is_b) r.result["h0_is_b"] = *e.h0_is_b;
  if (e.h1_vanishes) {
    r.result["h1_vanishes"] = *e.h1_vanishes;
    auto v = smoothness_probe(dg, 8);
    if (v.kind != SmoothnessVerdict::Kind::Smooth)
      r.hypotheses.push_back("H^1 vanishing is predicted only for smooth input; smoothness is " + to_string(v.kind));
  }
}

void cmd_smooth(const Input& in, std::size_t steps, Report& r) {
  r.result = smooth_json(smoothness_probe(require_dg(in, "smooth"), steps));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"A-infinity and DG-algebra engine"};
  app.require_subcommand(1);
  std::string file;
  int lo = 0, hi = 0, cap = 0;
  std::size_t n = 4, max_arity = 0, k_max = 10, steps = 8;
  bool canonical = false, stats = false, assume_smooth = false;

  auto* validate = app.add_subcommand("validate", "parse and check the axioms");
  validate->add_flag("--canonical", canonical, "print the canonical serialization instead of a report");
  auto* cohomology = app.add_subcommand("cohomology", "cohomology dimensions and predicates");
  auto* truncate = app.add_subcommand("truncate", "good truncation to non-positive degrees");
  auto* minimal = app.add_subcommand("minimal-model", "homotopy transfer to cohomology");
  minimal->add_option("--cap", cap, "largest arity to compute");
  auto* trees = app.add_subcommand("trees", "count planar trees with n leaves");
  trees->add_option("--n", n, "number of leaves")->required();
  trees->add_option("--max-arity", max_arity, "largest vertex arity (default n)");
  trees->add_flag("--stats", stats, "list every tree with v and |psi|");
  auto* filtration = app.add_subcommand("filtration", "radical filtration layers");
  filtration->add_option("--max", k_max, "largest layer index");
  auto* k0 = app.add_subcommand("k0", "rank of K0");
  auto* motive = app.add_subcommand("motive", "additive motive report");
  motive->add_flag("--assume-smooth", assume_smooth, "treat the input as smooth");
  auto* hh = app.add_subcommand("hh", "Hochschild cohomology window");
  auto* ext = app.add_subcommand("ext", "Ext window of H^0 over the algebra");
  for (auto* c : {hh, ext}) {
    c->add_option("--lo", lo, "lowest degree")->required();
    c->add_option("--hi", hi, "highest degree")->required();
  }
  auto* smooth = app.add_subcommand("smooth", "smoothness probe");
  smooth->add_option("--max-steps", steps, "resolution steps per simple");
  for (auto* c : {validate, cohomology, truncate, minimal, filtration, k0, motive, hh, ext, smooth})
    c->add_option("file", file, "algebra file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  auto* sub = app.get_subcommands().front();
  Report report;
  report.command = sub->get_name();
  for (int i = 2; i < argc; ++i) report.command += std::string(" ") + argv[i];
  Stopwatch clock;
  try {
    std::optional<Input> in;
    if (sub != trees) {
      in = load(file);
      report.input_digest = fnv1a64(in->text);
    }
    if (sub == validate) {
      if (canonical) {
        std::cout << serialize(in->presentation);
        return kOk;
      }
      cmd_validate(*in, report);
    } else if (sub == cohomology) {
      cmd_cohomology(*in, report);
    } else if (sub == truncate) {
      cmd_truncate(*in, report);
    } else if (sub == minimal) {
      cmd_minimal_model(*in, cap, report);
    } else if (sub == trees) {
      cmd_trees(n, max_arity, stats, report);
    } else if (sub == filtration) {
      cmd_filtration(*in, k_max, report);
    } else if (sub == k0) {
      cmd_k0(*in, report);
    } else if (sub == motive) {
      cmd_motive(*in, assume_smooth, report);
    } else if (sub == hh) {
      cmd_hh(*in, lo, hi, report);
    } else if (sub == ext) {
      cmd_ext(*in, lo, hi, report);
    } else if (sub == smooth) {
      cmd_smooth(*in, steps, report);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  report.timing_ms = clock.elapsed_ms();
  std::cout << report.to_json().dump(2) << "\n";
  return kOk;
}
