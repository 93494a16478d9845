// xmodkit: exact crossed-module and extension calculator over finite
// models. Verbs operate on a workspace of JSON documents; exit status is
// 0 on verdict-pass, 1 on verdict-fail, 2 on input errors.

#include <iostream>

#include "CLI11.hpp"
#include "xmodkit/corpus.hpp"
#include "xmodkit/io/report.hpp"
#include "xmodkit/io/workspace.hpp"
#include "xmodkit/lie/obstruction.hpp"
#include "xmodkit/pbg/fromext.hpp"

using namespace xmodkit;
using algebra::Idx;

namespace {

struct Options {
  std::string workspace = ".";
  std::string emit = "text";
  std::string convention = "paper";
  std::uint64_t seed = 0;
  std::size_t max_size = 4;
};

int run_validate(const Options& opt, const std::string& name) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  const io::json& j = ws.doc(name);
  io::Report rep;
  rep.verb = "validate";
  rep.input(name, j);
  std::string type = j.value("type", "");
  if (type == "group") {
    ws.group(name);
    rep.verdict("group axioms", true);
  } else if (type == "nerve") {
    ws.nerve(name);
    rep.verdict("nerve structure", true);
  } else if (type == "lie_algebra") {
    ws.lie_algebra(name);
    rep.verdict("antisymmetry and Jacobi", true);
  } else if (type == "xmod") {
    xmod::XModContext ctx = ws.xmod_context(name);
    xmod::XModReport r = xmod::validate_xmod(ctx.x);
    for (const auto& c : r.conditions) rep.verdict(c.name, c.ok, c.witness);
    rep.verdict("pair crossed module", r.pair);
    rep.witnesses["coupling"] = r.coupling ? "yes" : "no";
  } else if (type == "pbg_xmod") {
    pbg::PBGContext ctx = ws.pbg_context(name);
    pbg::PBGXModReport r = pbg::validate_pbgxmod(ctx.x);
    for (const auto& c : r.conditions) rep.verdict(c.name, c.ok, c.witness);
    auto cond = pbg::check_isometablic_conditions(ctx.td);
    for (const auto& c : cond.conditions) rep.verdict(c.name, c.ok, c.witness);
  } else if (type == "transition") {
    io::TransitionDoc td = io::transition_doc_from_json(j);
    xmod::XModContext ctx = ws.xmod_context(td.xmod_ref);
    ws.transition_system(ctx, name);
    rep.verdict("transition cocycle with lift", true);
  } else if (type == "coupling") {
    ws.coupling(name);
    rep.verdict("coupling preserves brackets", true);
  } else {
    fail("SchemaError", "unknown document type '" + type + "'");
  }
  return io::emit(rep, opt.emit);
}

int run_obstruction(const Options& opt, const std::string& name,
                    const std::string& transition) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "obstruction";
  const io::json& j = ws.doc(name);
  rep.input(name, j);
  std::string type = j.value("type", "");
  if (type == "pbg_xmod") {
    pbg::PBGContext ctx = ws.pbg_context(name);
    pbg::EquivariantLift lift = pbg::canonical_lift(ctx);
    pbg::EquivariantObstruction obs = pbg::equivariant_obstruction(ctx, lift);
    rep.verdict("values in ker del", obs.values_in_kernel);
    rep.verdict("equivariant", obs.equivariant);
    rep.verdict("locally constant", obs.locally_constant);
    rep.verdict("delta e = 0", obs.delta_zero);
    bool zero = pbg::obstruction_class_zero(ctx, lift);
    rep.witnesses["class"] = zero ? "0" : "nonzero";
    rep.verdict("class = 0", zero);
  } else {
    if (transition.empty()) fail("SchemaError", "--transition required for xmod documents");
    xmod::XModContext ctx = ws.xmod_context(name);
    rep.input(transition, ws.doc(transition));
    xmod::TransitionSystem ts = ws.transition_system(ctx, transition);
    xmod::Convention conv = opt.convention == "standard" ? xmod::Convention::standard
                                                         : xmod::Convention::paper;
    xmod::LiftingObstruction obs = xmod::lifting_obstruction(ctx, ts, conv);
    rep.verdict("values in ZH", obs.values_central);
    rep.verdict("values in ker del", obs.values_in_kernel);
    rep.verdict("locally constant", obs.locally_constant);
    rep.verdict("cocycle", obs.is_cocycle);
    rep.verdict("conventions agree", obs.conventions_agree);
    site::CentralCochain zero(ctx.nerve, ctx.coeff, 2);
    bool is_zero = site::classes_equal(obs.e, zero).equal;
    rep.witnesses["class"] = is_zero ? "0" : "nonzero";
    rep.verdict("class = 0", is_zero);
  }
  return io::emit(rep, opt.emit);
}

int run_extend(const Options& opt, const std::string& name, const std::string& transition) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "extend";
  const io::json& j = ws.doc(name);
  rep.input(name, j);
  std::string type = j.value("type", "");
  if (type == "pbg_xmod") {
    pbg::PBGContext ctx = ws.pbg_context(name);
    pbg::EquivariantLift lift = pbg::canonical_lift(ctx);
    pbg::PBGOperatorExtension o = pbg::operator_extension(ctx, lift);  // throws if nonzero
    pbg::PBGOpextReport r = pbg::validate_pbg_operator_extension(ctx, o);
    for (const auto& c : r.conditions) rep.verdict(c.name, c.ok, c.witness);
    rep.witnesses["arrows"] = std::to_string(o.total.g.arrow_count());
  } else {
    if (transition.empty()) fail("SchemaError", "--transition required for xmod documents");
    xmod::XModContext ctx = ws.xmod_context(name);
    rep.input(transition, ws.doc(transition));
    xmod::TransitionSystem ts = ws.transition_system(ctx, transition);
    xmod::OperatorExtension o = xmod::opext_from_vanishing(ctx, ts);
    xmod::OpextReport r = xmod::validate_operator_extension(ctx, o);
    for (const auto& c : r.conditions) rep.verdict(c.name, c.ok, c.witness);
    rep.witnesses["arrows"] = std::to_string(o.total.arrow_count());
  }
  return io::emit(rep, opt.emit);
}

int run_glue(const Options& opt, const std::string& name) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "glue";
  rep.input(name, ws.doc(name));
  pbg::PBGContext ctx = ws.pbg_context(name);
  pbg::PBGGroupoid p = pbg::glue(ctx.td);
  pbg::PBGReport r = pbg::validate_pbg(p);
  for (const auto& c : r.conditions) rep.verdict(c.name, c.ok, c.witness);
  std::size_t points = ctx.td.atlas.total().point_count();
  rep.verdict("arrow count |P|^2 |H|",
              p.g.arrow_count() == points * points * ctx.td.h.size());
  return io::emit(rep, opt.emit);
}

int run_extract(const Options& opt, const std::string& name) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "extract";
  rep.input(name, ws.doc(name));
  pbg::PBGContext ctx = ws.pbg_context(name);
  pbg::PBGGroupoid p = pbg::glue(ctx.td);
  pbg::SectionFamily fam = pbg::canonical_sections(p, ctx.td);
  pbg::TransitionData td2 = pbg::extract_transition_data(p, fam);
  auto cond = pbg::check_isometablic_conditions(td2);
  for (const auto& c : cond.conditions) rep.verdict(c.name, c.ok, c.witness);
  return io::emit(rep, opt.emit);
}

int run_equivalent(const Options& opt, const std::string& a, const std::string& b) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "equivalent";
  rep.input(a, ws.doc(a));
  rep.input(b, ws.doc(b));
  pbg::PBGContext ca = ws.pbg_context(a);
  pbg::PBGContext cb = ws.pbg_context(b);
  if (!(ca.td.h == cb.td.h) || !(ca.td.atlas == cb.td.atlas))
    fail("SchemaError", "instances do not share an atlas and vertex model");
  pbg::DataEquivalence eq = pbg::data_equivalent(ca.td, cb.td);
  rep.verdict("equivalent transition data", eq.equivalent);
  if (eq.equivalent) rep.witnesses["isomorphism"] = "realized and verified";
  return io::emit(rep, opt.emit);
}

int run_act(const Options& opt, const std::string& name, const std::string& transition,
            const std::string& cocycle) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "act";
  rep.input(name, ws.doc(name));
  xmod::XModContext ctx = ws.xmod_context(name);
  xmod::TransitionSystem ts = ws.transition_system(ctx, transition);
  xmod::OperatorExtension o = xmod::opext_from_vanishing(ctx, ts);

  // the twisting cocycle: kernel-valued values per pair overlap
  io::TransitionDoc fd = io::transition_doc_from_json(ws.doc(cocycle));
  site::CentralCochain f(ctx.nerve, ctx.coeff, 1);
  const auto& pairs = ctx.nerve->simplices(1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    std::string key = ctx.nerve->chart_names()[pairs[k].charts[0]] + "|" +
                      ctx.nerve->chart_names()[pairs[k].charts[1]];
    auto it = fd.values.find(key);
    if (it == fd.values.end()) continue;
    for (std::size_t c = 0; c < pairs[k].comps.size(); ++c) {
      Idx p = pairs[k].comps[c].front();
      auto pt = it->second.find(ctx.nerve->point_names()[p]);
      if (pt != it->second.end())
        f.set_slot(f.slot_of(k, c), ctx.h.index(pt->second));
    }
  }
  xmod::OperatorExtension moved = xmod::h1_action(ctx, o, f);
  xmod::EquivalenceDecision dec = xmod::equivalent_opext(ctx, o, moved);
  rep.verdict("twisted extension valid",
              xmod::validate_operator_extension(ctx, moved).valid);
  rep.witnesses["class moved"] = dec.equivalent ? "no" : "yes";
  rep.verdict("action computed", true);
  return io::emit(rep, opt.emit);
}

int run_cohomology(const Options& opt, const std::string& nerve_ref,
                   const std::string& coeff_ref, std::size_t degree) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "cohomology";
  rep.input(nerve_ref, ws.doc(nerve_ref));
  rep.input(coeff_ref, ws.doc(coeff_ref));
  auto nerve = ws.nerve(nerve_ref);
  algebra::FiniteGroup g = ws.group(coeff_ref);
  site::CoeffGroup cg = site::CoeffGroup::whole(g);
  std::uint64_t order = site::h_group_order(nerve, cg, degree);
  rep.witnesses["order"] = std::to_string(order);
  rep.work["degree"] = degree;
  rep.verdict("computed", true);
  return io::emit(rep, opt.emit);
}

int run_corpus(const Options& opt, const std::string& out_dir) {
  corpus::Caps caps;
  caps.max_charts = opt.max_size;
  corpus::Corpus c = corpus::generate(opt.seed, caps);
  c.workspace.save(out_dir);
  io::Report rep;
  rep.verb = "corpus";
  rep.work["documents"] = c.workspace.all().size();
  rep.work["pair_xmod_instances"] = c.xmods.size();
  rep.work["pbg_instances"] = c.pbgs.size();
  rep.work["derivation_laws"] = c.lies.size();
  rep.verdict("generated", true);
  // every document must re-parse to an equal value
  bool roundtrip = true;
  for (const auto& [name, j] : c.workspace.all()) {
    io::json reparsed = io::json::parse(j.dump());
    if (reparsed != j) roundtrip = false;
  }
  rep.verdict("documents round-trip", roundtrip);
  return io::emit(rep, opt.emit);
}

int run_lie_validate(const Options& opt, const std::string& name) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "lie-validate";
  rep.input(name, ws.doc(name));
  std::string type = ws.doc(name).value("type", "");
  if (type == "lie_algebra") {
    ws.lie_algebra(name);
    rep.verdict("antisymmetry and Jacobi", true);
  } else if (type == "coupling") {
    lie::Coupling c = ws.coupling(name);
    rep.verdict("bracket-preserving into OutDer", true);
    lie::LieModule m = lie::central_representation(c);
    rep.verdict("central representation well defined", m.is_representation() || m.vdim == 0);
  } else {
    fail("SchemaError", "lie-validate expects a Lie algebra or coupling");
  }
  return io::emit(rep, opt.emit);
}

int run_lie_curvature(const Options& opt, const std::string& name) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "lie-curvature";
  rep.input(name, ws.doc(name));
  lie::Coupling c = ws.coupling(name);
  lie::DerivationLaw law = lie::canonical_law(c);
  lie::CurvatureReport r = lie::curvature(law);
  rep.verdict("R takes values in ad(k)", r.values_in_ad);
  rep.verdict("R_bar = ad o R", r.companion_rbar_matches);
  rep.verdict("Bianchi identity", r.companion_bianchi);
  return io::emit(rep, opt.emit);
}

int run_lie_construct(const Options& opt, const std::string& name) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "lie-construct";
  rep.input(name, ws.doc(name));
  lie::Coupling c = ws.coupling(name);
  lie::CouplingConstruction cc = lie::construct_from_coupling(lie::canonical_law(c));
  lie::LieXModReport r = lie::validate_liexmod(cc.xmod);
  for (const auto& cond : r.conditions) rep.verdict(cond.name, cond.ok, cond.witness);
  rep.verdict("coupling crossed module", r.is_coupling);
  rep.verdict("induced coupling matches", lie::induced_coupling_matches(cc, c));
  rep.witnesses["total dimension"] = std::to_string(cc.total.dim());
  return io::emit(rep, opt.emit);
}

int run_lie_obstruction(const Options& opt, const std::string& name) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "lie-obstruction";
  rep.input(name, ws.doc(name));
  lie::Coupling c = ws.coupling(name);
  lie::DerivationLaw law = lie::canonical_law(c);
  lie::ObstructionResult obs = lie::coupling_obstruction(law);
  rep.verdict("lambda is ZK valued", obs.zk_valued);
  rep.verdict("d lambda = 0", obs.closed);
  bool zero = lie::obstruction_class_zero(obs);
  bool exists = lie::extension_exists(law).exists;
  rep.verdict("class zero iff extension exists", zero == exists);
  rep.witnesses["class"] = zero ? "0" : "nonzero";
  rep.verdict("class = 0", zero);
  return io::emit(rep, opt.emit);
}

int run_lie_cohomology(const Options& opt, const std::string& name, std::size_t degree) {
  io::Workspace ws = io::Workspace::load(opt.workspace);
  io::Report rep;
  rep.verb = "lie-cohomology";
  rep.input(name, ws.doc(name));
  lie::LieAlgebra a = ws.lie_algebra(name);
  lie::LieModule triv = lie::LieModule::trivial(a, 1);
  rep.witnesses["dim H^" + std::to_string(degree)] =
      std::to_string(lie::ce_cohomology_dim(triv, degree));
  rep.verdict("computed", true);
  return io::emit(rep, opt.emit);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xmodkit: crossed modules, transition data and lifting obstructions "
               "over finite models"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--workspace", opt.workspace, "workspace directory of JSON documents");
  app.add_option("--emit", opt.emit, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--convention", opt.convention, "obstruction convention: paper or standard")
      ->check(CLI::IsMember({"paper", "standard"}));
  app.add_option("--seed", opt.seed, "corpus seed");
  app.add_option("--max-size", opt.max_size, "corpus size caps (charts)");

  std::string doc, transition, cocycle, second, out_dir = "corpus_out";
  std::size_t degree = 2;

  auto* validate = app.add_subcommand("validate", "validate a document");
  validate->add_option("doc", doc)->required();
  auto* obstruction = app.add_subcommand("obstruction", "lifting obstruction class");
  obstruction->add_option("doc", doc)->required();
  obstruction->add_option("--transition", transition);
  auto* extend = app.add_subcommand("extend", "build an operator extension");
  extend->add_option("doc", doc)->required();
  extend->add_option("--transition", transition);
  auto* act = app.add_subcommand("act", "twist an operator extension by a 1-cocycle");
  act->add_option("doc", doc)->required();
  act->add_option("--transition", transition)->required();
  act->add_option("--cocycle", cocycle)->required();
  auto* glue = app.add_subcommand("glue", "glue a PBG-groupoid from transition data");
  glue->add_option("doc", doc)->required();
  auto* extract = app.add_subcommand("extract", "extract transition data back");
  extract->add_option("doc", doc)->required();
  auto* equivalent = app.add_subcommand("equivalent", "decide transition data equivalence");
  equivalent->add_option("a", doc)->required();
  equivalent->add_option("b", second)->required();
  auto* cohomology = app.add_subcommand("cohomology", "Cech cohomology group order");
  cohomology->add_option("nerve", doc)->required();
  cohomology->add_option("coefficients", second)->required();
  cohomology->add_option("--degree", degree);
  auto* corpus_cmd = app.add_subcommand("corpus", "generate the pinned corpus");
  corpus_cmd->add_option("--out", out_dir);
  auto* lie_validate = app.add_subcommand("lie-validate", "validate Lie documents");
  lie_validate->add_option("doc", doc)->required();
  auto* lie_curvature = app.add_subcommand("lie-curvature", "curvature of a coupling");
  lie_curvature->add_option("doc", doc)->required();
  auto* lie_construct = app.add_subcommand("lie-construct", "construction principle");
  lie_construct->add_option("doc", doc)->required();
  auto* lie_obstruction = app.add_subcommand("lie-obstruction", "degree-3 coupling obstruction");
  lie_obstruction->add_option("doc", doc)->required();
  auto* lie_cohomology = app.add_subcommand("lie-cohomology", "Chevalley-Eilenberg dimension");
  lie_cohomology->add_option("doc", doc)->required();
  lie_cohomology->add_option("--degree", degree);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return run_validate(opt, doc);
    if (*obstruction) return run_obstruction(opt, doc, transition);
    if (*extend) return run_extend(opt, doc, transition);
    if (*act) return run_act(opt, doc, transition, cocycle);
    if (*glue) return run_glue(opt, doc);
    if (*extract) return run_extract(opt, doc);
    if (*equivalent) return run_equivalent(opt, doc, second);
    if (*cohomology) return run_cohomology(opt, doc, second, degree);
    if (*corpus_cmd) return run_corpus(opt, out_dir);
    if (*lie_validate) return run_lie_validate(opt, doc);
    if (*lie_curvature) return run_lie_curvature(opt, doc);
    if (*lie_construct) return run_lie_construct(opt, doc);
    if (*lie_obstruction) return run_lie_obstruction(opt, doc);
    if (*lie_cohomology) return run_lie_cohomology(opt, doc, degree);
  } catch (const Error& e) {
    if (e.code == "ObstructionNonzero") {
      std::cerr << e.what() << "\n";
      return 1;  // verdict failure, not an input error
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
