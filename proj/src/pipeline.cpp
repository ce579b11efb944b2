#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "acyl/annulus.hpp"
#include "acyl/condition_c.hpp"
#include "acyl/error.hpp"
#include "acyl/lemmas.hpp"
#include "acyl/pipeline.hpp"

namespace acyl {

namespace {

Status verdict(bool ok) { return ok ? Status::kPass : Status::kFail; }

Record record(std::string name, std::string anchor, std::string measured, std::string bound, Status status,
              int word_bound = 0, int window = 0, std::string note = {}) {
  return Record{std::move(name), std::move(anchor), std::move(measured), std::move(bound),
                status,          word_bound,        window,              std::move(note)};
}

std::string counts_string(const FinitenessProbe& p) {
  std::string s;
  for (auto c : p.counts) s += (s.empty() ? "" : ",") + std::to_string(c);
  return s;
}

Record probe_record(std::string name, std::string anchor, const FinitenessProbe& p) {
  return record(std::move(name), std::move(anchor), "c=" + counts_string(p), "stable over the tail window",
                verdict(p.stabilized), p.word_bound(), p.tail_window, p.condition);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

MetricGraph make_graph(const RunConfig& c) {
  if (!c.graph.empty()) return MetricGraph::load(c.graph);
  if (c.instance.empty() || c.instance == "f2-tree") return instances::free_group_tree(c.depth);
  if (c.instance == "cycle") return instances::cycle(c.n);
  if (c.instance == "grid") return instances::grid(c.rows, c.cols);
  if (c.instance == "torus") return instances::torus(c.rows, c.cols);
  throw Error(ErrorCode::kInvalidArgument, "no graph for instance " + c.instance);
}

BoundaryModel make_boundary(const RunConfig& c) {
  if (!c.boundary.empty()) return BoundaryModel::load(c.boundary);
  return BoundaryModel(c.depth, c.effective_buffer());
}

BoundaryAction make_action(const BoundaryModel& model, const RunConfig& c) {
  if (!c.action.empty()) return BoundaryAction::from_spec(model, ActionSpec::load(c.action));
  return BoundaryAction(model);
}

bool lattice_instance(const RunConfig& c) {
  if (c.instance == "z2-action") return true;
  if (c.action.empty()) return false;
  auto spec = ActionSpec::load(c.action);
  return !spec.generators.empty() &&
         std::all_of(spec.generators.begin(), spec.generators.end(),
                     [](const GeneratorSpec& g) { return g.kind == GeneratorSpec::Kind::kTranslation; });
}

LatticeAction make_lattice(const RunConfig& c) {
  if (!c.action.empty()) return LatticeAction::from_spec(ActionSpec::load(c.action));
  return LatticeAction();
}

/// (Cyl(first letter of the repelling ray), Cyl(first letter of the attracting ray)),
/// both after the conjugating prefix of g.
Annulus axis_annulus(const std::string& g) {
  auto [attracting, repelling] = fixed_rays(g);
  std::size_t k = f2::common_prefix(attracting, repelling, 4096);
  return Annulus::make(ClopenSet::cylinder(repelling.prefix(k + 1)), ClopenSet::cylinder(attracting.prefix(k + 1)));
}

Annulus make_annulus(const RunConfig& c) {
  if (!c.annulus.empty()) return Annulus::parse(read_file(c.annulus));
  return axis_annulus(f2::parse(c.element));
}

void append(Report& to, const Report& from, const std::string& prefix) {
  for (auto r : from.records) {
    r.name = prefix + r.name;
    to.records.push_back(std::move(r));
  }
}

// ---------------------------------------------------------------------------

Report cmd_gen(const RunConfig& c) {
  Report rep;
  if (c.out.empty()) throw Error(ErrorCode::kInvalidArgument, "gen needs an output path");
  auto out = open_output(c.out);
  if (c.instance == "f2-tree" || c.instance == "cycle" || c.instance == "grid" || c.instance == "torus") {
    auto g = make_graph(c);
    g.write(out);
    std::uint64_t expected = 0;
    std::string formula;
    if (c.instance == "f2-tree") {
      expected = 1;
      for (int k = 1; k <= c.depth; ++k) expected += f2::count_of_length(k);
      formula = "1 + sum_{k<=D} 4*3^(k-1)";
    } else if (c.instance == "cycle") {
      expected = static_cast<std::uint64_t>(c.n);
      formula = "n";
    } else {
      expected = static_cast<std::uint64_t>(c.rows) * static_cast<std::uint64_t>(c.cols);
      formula = "rows*cols";
    }
    rep.records.push_back(record("vertices", formula, std::to_string(g.size()), std::to_string(expected),
                                 verdict(g.size() == expected), 0, 0, c.out));
  } else if (c.instance == "f2-boundary") {
    BoundaryModel m(c.depth, c.effective_buffer());
    m.write(out);
    auto expected = f2::count_of_length(c.depth);
    rep.records.push_back(record("points", "4*3^(D-1)", std::to_string(m.points().size()), std::to_string(expected),
                                 verdict(m.points().size() == expected), 0, 0, c.out));
  } else if (c.instance == "z2-action") {
    ActionSpec spec;
    GeneratorSpec x, y;
    x.name = "x";
    x.kind = y.kind = GeneratorSpec::Kind::kTranslation;
    x.dx = 1;
    y.name = "y";
    y.dy = 1;
    spec.generators = {x, y};
    spec.write(out);
    rep.records.push_back(record("generators", "Z^2 translating R^2", "2", "2", Status::kPass, 0, 0, c.out));
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown instance: " + c.instance);
  }
  return rep;
}

Report cmd_verify_lemmas(const RunConfig& c) {
  Report rep;
  auto space = make_graph(c);
  auto boundary = make_boundary(c);
  LemmaOptions opt;
  opt.samples = static_cast<std::uint64_t>(c.samples);
  opt.seed = c.seed;
  auto lr = verify_constant_lemmas(space, &boundary, opt);
  rep.records.push_back(record("delta", "four-point delta of the space", to_string(lr.delta.delta_4pt),
                               "slim=" + to_string(lr.delta.delta_slim), Status::kMeasured, 0, 0,
                               lr.delta.exhaustive ? "exhaustive" : "sampled"));
  bool all_zero = true;
  for (const auto& ch : lr.checks) {
    all_zero = all_zero && ch.measured <= Rational(0);
    Status st = !ch.passed ? Status::kFail : ch.evaluated > 0 ? Status::kPass : Status::kMeasured;
    std::string note = "evaluated=" + std::to_string(ch.evaluated) + " vacuous=" + std::to_string(ch.vacuous) +
                       (ch.exhaustive ? " exhaustive" : " sampled");
    if (ch.evaluated == 0) note += "; no configuration met the hypothesis";
    rep.records.push_back(record(ch.name, ch.statement, to_string(ch.measured),
                                 std::to_string(ch.multiple) + "*delta = " + to_string(ch.bound), st, 0, 0, note));
  }
  if (lr.delta.delta_4pt == Rational(0)) {
    rep.records.push_back(record("tree_defects_zero", "every defect is 0 when delta = 0", all_zero ? "0" : "nonzero",
                                 "0", verdict(all_zero)));
  }
  const auto& b = lr.boundary;
  std::string measured = "violations=" + std::to_string(b.sandwich_violations) +
                         " triangle_violations=" + std::to_string(b.triangle_violations) +
                         " min(rho-d'/2)=" + to_string(b.lower_margin) + " min(d'-rho)=" + to_string(b.upper_margin);
  rep.records.push_back(record("boundary_sandwich", "d'(s,t)/2 <= rho(s,t) <= d'(s,t)", measured, "0 violations",
                               b.asserted ? verdict(b.holds()) : Status::kMeasured, 0, 0,
                               "pairs=" + std::to_string(b.pairs) + " depth=" + std::to_string(boundary.depth()) +
                                   " zeta=" + boundary.zeta().to_string()));
  return rep;
}

Report cmd_condition_c_lattice(const RunConfig& c) {
  Report rep;
  auto action = make_lattice(c);
  LatticePoint x{0, 0}, y{1, 0};
  auto tuples = sample_lattice_tuples(static_cast<std::size_t>(c.tuples), c.seed);
  if (tuples.empty()) return rep;
  auto schedule = DepthSchedule::up_to(c.depth, c.words, c.tail_window);
  auto s = check_condition_c(action, x, y, tuples, schedule);
  rep.records.push_back(record("witness_pair", "one U, V serving every target tuple",
                               "U=" + s.U + " V=" + s.V + " level=" + std::to_string(s.neighborhood_depth), "found",
                               verdict(s.found), c.words, c.tail_window, s.failure));
  rep.records.push_back(record("tuples_passed", "violator counts stabilize for every tuple",
                               std::to_string(s.passed()) + "/" + std::to_string(s.targets.size()),
                               std::to_string(s.targets.size()), verdict(s.all_passed()), c.words, c.tail_window));
  return rep;
}

Report cmd_condition_c(const RunConfig& c) {
  if (lattice_instance(c)) return cmd_condition_c_lattice(c);
  Report rep;
  auto model = make_boundary(c);
  auto action = make_action(model, c);
  auto [attracting, repelling] = fixed_rays(f2::parse(c.element));
  const std::string x = attracting.prefix(model.depth()), y = repelling.prefix(model.depth());
  auto tuples = sample_target_tuples(model, static_cast<std::size_t>(c.tuples), c.seed);
  if (tuples.empty()) return rep;
  auto schedule = DepthSchedule::up_to(model.depth(), c.words, c.tail_window);
  auto s = check_condition_c(action, x, y, tuples, schedule);
  rep.records.push_back(record("witness_pair", "one U, V serving every target tuple",
                               "U=" + s.U + " V=" + s.V + " depth=" + std::to_string(s.neighborhood_depth), "found",
                               verdict(s.found), c.words, c.tail_window, "x=" + x + " y=" + y + (s.failure.empty() ? "" : " " + s.failure)));
  static const char* kAnchors[3] = {
      "{g : gA and gB each meet both U and V} finite",
      "{g : gA meets U, gB meets V, gC meets both U and V} finite",
      "{g : gA and gB meet U, gC and gD meet V} finite",
  };
  for (int k = 1; k <= 3; ++k) {
    std::size_t total = 0, passed = 0;
    std::uint64_t worst = 0;
    std::string first_failure;
    for (const auto& w : s.targets) {
      if (w.condition != k) continue;
      ++total;
      passed += w.found ? 1 : 0;
      worst = std::max(worst, w.violators.final_count());
      if (!w.found && first_failure.empty()) first_failure = w.failure;
    }
    rep.records.push_back(record("condition_" + std::to_string(k), kAnchors[k - 1],
                                 std::to_string(passed) + "/" + std::to_string(total) + " max_violators=" +
                                     std::to_string(worst),
                                 std::to_string(total), verdict(s.found && passed == total), c.words, c.tail_window,
                                 first_failure));
  }
  if (s.found && !s.targets.empty()) {
    auto [original, moved] = equivariance_check(action, x, y, s.targets.front(), "ab");
    rep.records.push_back(record("equivariance", "violator counts unchanged when every set is moved by h=ab",
                                 counts_string(original) + " vs " + counts_string(moved), "equal",
                                 verdict(original.counts == moved.counts), c.words, c.tail_window));
  }
  return rep;
}

Report cmd_dynamics_lattice(const RunConfig& c) {
  Report rep;
  auto action = make_lattice(c);
  auto elements = action.enumerate(c.words);
  std::size_t two = 0, nontrivial = 0;
  for (const auto& e : elements) {
    auto fixed = LatticeAction::fixed_point_count(e);
    if (!fixed) continue;
    ++nontrivial;
    two += *fixed == 2 ? 1 : 0;
  }
  rep.records.push_back(record("no_north_south_element", "no element of Z^2 fixes exactly two points of R^2",
                               std::to_string(two) + " of " + std::to_string(nontrivial) + " nontrivial elements",
                               "0", verdict(two == 0), c.words));
  return rep;
}

Report cmd_dynamics(const RunConfig& c) {
  if (lattice_instance(c)) return cmd_dynamics_lattice(c);
  Report rep;
  auto model = make_boundary(c);
  auto action = make_action(model, c);
  const std::string g = f2::parse(c.element);
  std::vector<int> depths;
  for (int d = 1; d <= std::max(1, model.depth() - 2); ++d) depths.push_back(d);
  auto cert = detect_north_south(model, g, depths, c.n_max);
  bool ns = cert.kind == DynamicsCertificate::Kind::kNorthSouth;
  rep.records.push_back(record("north_south", "exactly two fixed points, attracting and repelling",
                               std::to_string(cert.fixed_points.size()) + " fixed; attracting=" + cert.attracting +
                                   " repelling=" + cert.repelling,
                               "2", verdict(ns && cert.fixed_points.size() == 2), 0, 0, cert.diagnostic));
  for (const auto& p : cert.pairs) {
    rep.records.push_back(record("north_south_depth_" + std::to_string(p.depth),
                                 "g^n(M \\ U) inside V for all N <= n <= n_max",
                                 p.N ? "N=" + std::to_string(*p.N) : "none",
                                 "N <= n_max=" + std::to_string(cert.n_max), verdict(p.N.has_value()), 0, 0,
                                 "U=Cyl(" + p.repelling_cylinder + ") V=Cyl(" + p.attracting_cylinder + ")"));
  }

  std::map<std::string, int> kinds;
  bool torsion_free = true;
  for (const auto& h : f2::words_up_to(std::min(2, model.depth() - 1))) {
    auto cl = classify_element(model, h);
    ++kinds[to_string(cl.kind)];
    if (!h.empty() && cl.kind != ElementKind::kLoxodromic) torsion_free = false;
  }
  std::string tally;
  for (const auto& [k, n] : kinds) tally += (tally.empty() ? "" : " ") + k + "=" + std::to_string(n);
  rep.records.push_back(record("classification", "every nontrivial element of F2 is loxodromic", tally,
                               "no elliptic or parabolic element besides e", verdict(torsion_free)));

  const Rational eps(c.epsilon);
  const std::int64_t R = 2 * c.epsilon + 2;
  auto acyl = free_group_acylindricity_probe(eps, Rational(R), "e", f2::power("a", R), c.words, c.tail_window);
  rep.records.push_back(probe_record("acylindricity_tree",
                                     "#{h : d(x,hx) <= eps, d(y,hy) <= eps} finite for d(x,y) >= R", acyl));
  auto wpd = free_group_wpd_probe(g, "", eps, c.K, c.words, c.tail_window);
  auto wr = probe_record("wpd_tree", "#{h : d(s,hs) <= eps, d(g^K s, h g^K s) <= eps} finite", wpd.base);
  wr.status = verdict(wpd.base.stabilized && wpd.transfer_holds);
  rep.records.push_back(wr);
  if (model.depth() >= 2) {
    auto pd = proper_discontinuity_probe(action, 1, c.words, c.tail_window);
    rep.records.push_back(probe_record("proper_discontinuity",
                                       "#{h : hK meets K} finite for K = triples with pairwise products <= 1", pd));
  }
  return rep;
}

Report cmd_annulus(const RunConfig& c) {
  Report rep;
  auto model = make_boundary(c);
  auto base = make_annulus(c);
  AnnulusSystem sys(model, base, c.words);
  const int L = c.words;
  rep.records.push_back(record("base_annulus", "A- and A+ disjoint, complement nonempty", base.to_string(), "valid",
                               Status::kPass));

  // Nesting is preserved by the action on a small window.
  {
    AnnulusSystem small(model, base, 2);
    auto annuli = small.realized();
    std::uint64_t checks = 0, mismatches = 0;
    for (const auto& h : f2::words_up_to(2)) {
      for (const auto& p : annuli) {
        for (const auto& q : annuli) {
          ++checks;
          if (nests(p.annulus, q.annulus) != nests(p.annulus.translate(h), q.annulus.translate(h))) ++mismatches;
        }
      }
    }
    rep.records.push_back(record("nesting_equivariance", "A < B iff hA < hB", std::to_string(mismatches) + " mismatches",
                                 "0", verdict(mismatches == 0), 2, 0, std::to_string(checks) + " checks"));
  }

  auto ax = verify_axioms(sys, c.samples, c.tail_window, c.seed);
  rep.records.push_back(record("axiom_finite", "(x,y|z,w) < infinity for x != y, z != w",
                               std::to_string(ax.a1_stable) + "/" + std::to_string(ax.quadruples) + " stable, " +
                                   std::to_string(ax.a1_infinite) + " infinite",
                               std::to_string(ax.quadruples), verdict(ax.a1_holds() && ax.quadruples > 0), L,
                               c.tail_window, ax.a1_witness.value_or("")));
  rep.records.push_back(record("axiom_thin", "no x,y,z,w with (x,y|z,w) > k and (x,z|y,w) > k",
                               "k=" + std::to_string(ax.a2_k), "finite", Status::kPass, L, 0,
                               ax.a2_witness.value_or("no quadruple with both values positive")));

  const std::string g = f2::parse(c.element);
  auto lox = certify_loxodromic(sys, g, std::nullopt, c.n_max);
  rep.records.push_back(record("loxodromic_N", "g^N(M \\ A-) inside A+", lox.N ? std::to_string(*lox.N) : "none",
                               "N <= " + std::to_string(lox.n_budget), verdict(lox.N.has_value()), 0, 0,
                               lox.failure.empty() ? "z=" + lox.third.to_string() : lox.failure));
  for (const auto& ch : lox.checks) rep.records.push_back(record(ch.name, ch.formula, ch.holds ? "holds" : "fails", "holds", verdict(ch.holds)));
  for (const auto& row : lox.rows) {
    std::string chain;
    for (const auto& a : row.chain) chain += (chain.empty() ? "" : " < ") + a;
    rep.records.push_back(record("displacement_n" + std::to_string(row.n),
                                 "rho(a, g^{nN} a) >= (x,z | g^{nN} z, y) >= n - 1",
                                 "crossratio=" + std::to_string(row.crossratio) + " rho=" + std::to_string(row.rho),
                                 ">= " + std::to_string(row.lower_bound), verdict(row.holds()), row.word_bound, 0,
                                 (row.exact ? "exact; chain " : "truncated; chain ") + chain));
  }

  auto wpd = certify_wpd(sys, g, std::nullopt, c.epsilon, c.words, c.tail_window, c.samples, c.seed);
  rep.records.push_back(record("wpd_constants", "L > eps + 2, K = (2L+1)N",
                               "L=" + std::to_string(wpd.L) + " K=" + std::to_string(wpd.K), "eps=" + std::to_string(c.epsilon),
                               verdict(wpd.L > c.epsilon + 2 && wpd.loxodromic.N && wpd.K == (2 * wpd.L + 1) * *wpd.loxodromic.N)));
  rep.records.push_back(record("wpd_coordinates",
                               "rho(a,w) <= eps puts two coordinates of w in A_L-; rho(g^K a,w) <= eps puts two in A_L+",
                               std::to_string(wpd.lemma_failures) + " failures", "0", verdict(wpd.lemma_failures == 0), 0, 0,
                               "sampled=" + std::to_string(wpd.sampled) + " near_a=" + std::to_string(wpd.premise_near_a) +
                                   " near_gKa=" + std::to_string(wpd.premise_near_gka) +
                                   (wpd.lemma_witness ? " " + *wpd.lemma_witness : "")));
  rep.records.push_back(probe_record("wpd_probe", "#{h : rho(a,ha) <= eps, rho(g^K a, h g^K a) <= eps} finite", wpd.probe));

  if (c.sigma_depth > 0) {
    BoundaryModel sm(c.sigma_depth, std::max(c.sigma_depth, c.effective_buffer()));
    AnnulusSystem ssys(sm, base, L);
    SigmaOptions so;
    so.s = c.s;
    so.seed = c.seed;
    auto sg = build_triple_graph(ssys, so);
    const std::uint64_t n = sm.points().size();
    rep.records.push_back(record("sigma_vertices", "distinct ordered triples n(n-1)(n-2)",
                                 std::to_string(sg.ordered_vertices), std::to_string(n * (n - 1) * (n - 2)),
                                 verdict(sg.ordered_vertices == n * (n - 1) * (n - 2)), 0, 0,
                                 std::to_string(sg.classes) + " unordered classes at depth " + std::to_string(sm.depth())));
    rep.records.push_back(record("sigma_rho_diagonal", "rho(x,x) = 0", sg.diagonal_zero ? "0 everywhere" : "nonzero", "0",
                                 verdict(sg.diagonal_zero)));
    rep.records.push_back(record("sigma_rho_symmetric", "rho(x,y) = rho(y,x)", sg.symmetric ? "symmetric" : "asymmetric",
                                 "symmetric", verdict(sg.symmetric)));
    rep.records.push_back(record("sigma_quasimetric_defect", "rho(x,y) <= rho(x,z) + rho(z,y) + r",
                                 "r=" + std::to_string(sg.r_defect), "finite", Status::kMeasured, 0, 0,
                                 std::to_string(sg.defect_samples) + " sampled triples"));
    std::string cov;
    for (auto [s, f] : sg.coverage_by_s) {
      std::ostringstream o;
      o << "s=" << s << ":" << f;
      cov += (cov.empty() ? "" : " ") + o.str();
    }
    rep.records.push_back(record("sigma_edge_threshold", "edges where rho <= s + 1", "s=" + std::to_string(sg.s),
                                 sg.s_auto ? "least s with 95% s-geodesic coverage" : "given", Status::kMeasured, 0, 0,
                                 cov));
    rep.records.push_back(record("sigma_connected", "unit-edge graph on triples is connected",
                                 std::to_string(sg.component_sizes.size()) + " components", "1", verdict(sg.connected()),
                                 0, 0, std::to_string(sg.class_edges) + " class edges"));
    rep.records.push_back(record("sigma_delta", "four-point delta of the path metric", to_string(sg.delta), "finite",
                                 Status::kMeasured, 0, 0,
                                 std::to_string(sg.delta_quadruples) + " quadruples; diameter >= " +
                                     std::to_string(sg.diameter_lower)));
    rep.records.push_back(record("sigma_equivariance", "rho(hx,hy) = rho(x,y) for |h| <= 2",
                                 std::to_string(sg.equivariance_failures) + " failures", "0",
                                 verdict(sg.equivariance_failures == 0), 0, 0,
                                 std::to_string(sg.equivariance_checks) + " checks" +
                                     (sg.equivariance_witness ? " " + *sg.equivariance_witness : "")));
    if (!c.sigma_out.empty()) {
      auto out = open_output(c.sigma_out);
      write_edge_list(sg, sm, out);
    }
  }
  return rep;
}

Report cmd_full(const RunConfig& c) {
  Report rep;
  if (lattice_instance(c)) {
    append(rep, cmd_condition_c(c), "condition_c.");
    append(rep, cmd_dynamics(c), "dynamics.");
    return rep;
  }
  RunConfig lemmas = c;
  lemmas.instance = "f2-tree";
  append(rep, cmd_verify_lemmas(lemmas), "lemmas.");
  append(rep, cmd_condition_c(c), "condition_c.");
  append(rep, cmd_dynamics(c), "dynamics.");
  append(rep, cmd_annulus(c), "annulus.");
  return rep;
}

}  // namespace

Report run(const RunConfig& config) {
  Report rep;
  const auto& cmd = config.command;
  if (cmd == "gen") rep = cmd_gen(config);
  else if (cmd == "verify-lemmas") rep = cmd_verify_lemmas(config);
  else if (cmd == "condition-c") rep = cmd_condition_c(config);
  else if (cmd == "dynamics") rep = cmd_dynamics(config);
  else if (cmd == "annulus") rep = cmd_annulus(config);
  else if (cmd == "full") rep = cmd_full(config);
  else throw Error(ErrorCode::kInvalidArgument, "unknown command: " + cmd);
  rep.command = cmd;
  rep.config = config.echo();
  return rep;
}

}  // namespace acyl
