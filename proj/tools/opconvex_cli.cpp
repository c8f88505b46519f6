// Command-line front end: reads a JSON instance file, dispatches to the
// library, prints a deterministic JSON result, and exits with
//   0 = computed / predicate true, 1 = predicate false or witness or
//   infeasible, 2 = invalid input, 3 = resource limit, 4 = internal defect.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "opconvex/instance_json.hpp"

using namespace opconvex;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;
constexpr int kExitDefect = 4;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::invalid_argument:
    case Errc::schema_error:
    case Errc::unknown_index:
    case Errc::arity_mismatch:
    case Errc::out_of_range:
    case Errc::dimension_mismatch:
    case Errc::family_mismatch:
    case Errc::unsupported_norm:
    case Errc::unsupported_order:
      return kExitInvalid;
    case Errc::resource_limit:
      return kExitResource;
    case Errc::internal_error:
    case Errc::theorem_violation:
      return kExitDefect;
    default:
      return kExitFalse;  // predicate failures, witnesses, infeasibility
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int emit_error(const Error& e) {
  Json j;
  j["error"]["kind"] = errc_name(e.code());
  if (!e.label().empty()) j["error"]["label"] = e.label();
  j["error"]["message"] = e.what();
  emit(j);
  return exit_code_for(e);
}

Json witness_json(const OperationWitness& w) {
  Json j;
  j["op"] = w.op;
  j["args"] = w.args;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::schema_error, "cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Json& task_block(const InstanceDocument& doc, const std::string& name) {
  if (!doc.tasks.contains(name)) fail(Errc::schema_error, "$." + name + ": task block missing");
  return doc.tasks.at(name);
}

std::size_t index_from(const Json& j, const std::string& path, std::size_t limit) {
  if (!j.is_number_unsigned() || j.get<std::size_t>() >= limit)
    fail(Errc::schema_error, path + ": index out of range");
  return j.get<std::size_t>();
}

const OrderedRange& require_range(const InstanceDocument& doc) {
  if (!doc.range) fail(Errc::schema_error, "$.range: required by this subcommand");
  return *doc.range;
}

// --- subcommand bodies; each returns the process exit code -------------------

int run_check(const InstanceDocument& doc) {
  Json checks;
  bool all = true;
  if (auto w = check_reflexive(doc.family)) {
    checks["reflexive"] = {{"pass", false}, {"witness", {{"op", w->op}, {"x", w->x}}}};
    all = false;
  } else {
    checks["reflexive"] = {{"pass", true}};
  }
  if (auto w = check_mutually_distributive(doc.family)) {
    checks["mutually_distributive"] = {{"pass", false},
                                       {"witness",
                                        {{"outer", w->outer},
                                         {"inner", w->inner},
                                         {"slot", w->slot},
                                         {"outer_args", w->outer_args},
                                         {"inner_args", w->inner_args}}}};
    all = false;
  } else {
    checks["mutually_distributive"] = {{"pass", true}};
  }
  if (doc.range) {
    if (auto d = range_check_reflexive(*doc.range)) {
      checks["range_reflexive"] = {{"pass", false}, {"detail", *d}};
      all = false;
    } else {
      checks["range_reflexive"] = {{"pass", true}};
    }
    if (auto d = range_check_mutually_distributive(*doc.range)) {
      checks["range_mutually_distributive"] = {{"pass", false}, {"detail", *d}};
      all = false;
    } else {
      checks["range_mutually_distributive"] = {{"pass", true}};
    }
    Json autom = {{"pass", true}};
    bool autom_ok = true;
    for (const auto& name : range_op_names(*doc.range)) {
      if (!autom_ok) break;
      for (std::size_t slot = 1; slot <= range_op_arity(*doc.range, name) && autom_ok; ++slot) {
        if (auto w = check_order_automorphism(*doc.range, name, slot)) {
          autom = {{"pass", false},
                   {"witness", {{"op", w->op}, {"slot", w->slot}, {"reason", w->reason}}}};
          autom_ok = false;
          all = false;
        }
      }
    }
    checks["range_order_automorphism"] = std::move(autom);
  }
  Json out;
  out["checks"] = std::move(checks);
  out["pass"] = all;
  emit(out);
  return all ? kExitPass : kExitFalse;
}

int run_hull(const InstanceDocument& doc, const std::string& set_name, bool extreme) {
  const Subset& h = named_set(doc, set_name);
  Subset result = extreme ? extreme_hull(doc.family, h) : convex_hull(doc.family, h);
  Json out;
  out["set"] = set_name;
  out[extreme ? "extreme_hull" : "hull"] = subset_to_json(result);
  emit(out);
  return kExitPass;
}

int run_interior(const InstanceDocument& doc, bool boundary) {
  Subset result = boundary ? omega_boundary(doc.family) : omega_interior(doc.family);
  Json out;
  out[boundary ? "boundary" : "interior"] = subset_to_json(result);
  emit(out);
  return kExitPass;
}

int run_classify(const InstanceDocument& doc, const std::string& fn, const std::string& expect) {
  FunctionTable f = materialize_function(doc, fn);
  const OrderedRange& range = require_range(doc);
  Json out;
  out["function"] = fn;
  auto record = [&](const char* key, std::optional<OperationWitness> w) {
    out[key] = w ? Json{{"pass", false}, {"witness", witness_json(*w)}} : Json{{"pass", true}};
    return !w;
  };
  bool convex = record("convex", is_convex_map(f, doc.family, range));
  bool concave = record("concave", is_concave_map(f, doc.family, range));
  bool affine = record("affine", is_affine_map(f, doc.family, range));
  emit(out);
  if (expect.empty()) return kExitPass;
  bool pass = (expect == "convex" && convex) || (expect == "concave" && concave) ||
              (expect == "affine" && affine);
  return pass ? kExitPass : kExitFalse;
}

Json certificate_json(const SupportCertificate& cert) {
  Json g;
  if (cert.g.is_finite()) {
    g = cert.g.ids();
  } else {
    g = Json::array();
    for (const auto& v : cert.g.vecs()) g.push_back(vec_to_json(v));
  }
  Json out;
  out["g"] = std::move(g);
  out["checks"] = {{"affine", cert.affine ? "pass" : "fail"},
                   {"dominated", cert.dominated ? "pass" : "fail"},
                   {"agrees_on_D", cert.agrees_on_d ? "pass" : "fail"}};
  return out;
}

Json hypotheses_json(const HypothesisReport& report) {
  Json arr = Json::array();
  for (const auto& item : report.items) {
    Json e;
    e["name"] = item.name;
    e["pass"] = item.pass;
    if (!item.detail.empty()) e["detail"] = item.detail;
    arr.push_back(std::move(e));
  }
  return arr;
}

int run_support(const InstanceDocument& doc, const SupportOptions& opts) {
  const Json& block = task_block(doc, "support");
  FunctionTable f = materialize_function(doc, block.at("f").get<std::string>());
  const Subset& d = named_set(doc, block.at("D").get<std::string>());
  SupportInstance inst{doc.family, require_range(doc), std::move(f), d};
  HypothesisReport report = verify_support_hypotheses(inst, opts.waive);
  SupportCertificate cert = support_extend(inst, opts);
  Json out;
  out["hypotheses"] = hypotheses_json(report);
  out["certificate"] = certificate_json(cert);
  emit(out);
  return kExitPass;
}

int run_support_at(const InstanceDocument& doc, std::optional<std::size_t> point_flag,
                   const SupportOptions& opts) {
  const Json& block = task_block(doc, "support");
  FunctionTable f = materialize_function(doc, block.at("f").get<std::string>());
  std::size_t p;
  if (point_flag)
    p = *point_flag;
  else if (block.contains("p"))
    p = index_from(block.at("p"), "$.support.p", doc.family.carrier_size());
  else
    fail(Errc::schema_error, "$.support.p: required (or pass --point)");
  SupportCertificate cert = support_at_point(doc.family, require_range(doc), f, p, opts);
  Json out;
  out["point"] = p;
  out["certificate"] = certificate_json(cert);
  emit(out);
  return kExitPass;
}

int run_subadditive(const InstanceDocument& doc, const SupportOptions& opts) {
  const Json& block = task_block(doc, "subadditive");
  std::vector<Rational> f = materialize_scalar_function(doc, block.at("f").get<std::string>());
  std::size_t p = index_from(block.at("p"), "$.subadditive.p", doc.family.carrier_size());
  std::string op_name =
      block.contains("op") ? block.at("op").get<std::string>() : doc.family.names().front();
  WrappedSupport result =
      subadditive_support(doc.family.carrier_size(), doc.family.op(op_name), f, p, opts);
  Json out;
  out["certificate"] = certificate_json(result.certificate);
  out["anchor_orbit"] = subset_to_json(result.instance.d_set);
  emit(out);
  return kExitPass;
}

int run_sublinear(const InstanceDocument& doc, const SolveOptions& lp_opts) {
  const Json& block = task_block(doc, "sublinear");
  std::vector<VecQ> sample, values;
  const Json& sj = block.at("sample");
  for (std::size_t i = 0; i < sj.size(); ++i)
    sample.push_back(vec_from_json(sj[i], "$.sublinear.sample[" + std::to_string(i) + "]"));
  const Json& vj = block.at("f");
  for (std::size_t i = 0; i < vj.size(); ++i) {
    const std::string path = "$.sublinear.f[" + std::to_string(i) + "]";
    values.push_back(vj[i].is_array() ? vec_from_json(vj[i], path)
                                      : VecQ{rational_from_json(vj[i], path)});
  }
  const RationalCone& cone = named_cone(doc, block.at("cone").get<std::string>());
  std::size_t p = index_from(block.at("p"), "$.sublinear.p", sample.size());
  Json out;
  if (block.contains("multipliers")) {
    std::vector<Rational> mults;
    const Json& mj = block.at("multipliers");
    for (std::size_t i = 0; i < mj.size(); ++i)
      mults.push_back(
          rational_from_json(mj[i], "$.sublinear.multipliers[" + std::to_string(i) + "]"));
    if (auto w = check_sampled_sublinearity(sample, values, cone, mults))
      out["sampled_sublinearity"] = {{"pass", false},
                                     {"witness",
                                      {{"i", w->i},
                                       {"j", w->j},
                                       {"t", rational_to_json(w->t)},
                                       {"s", rational_to_json(w->s)}}}};
    else
      out["sampled_sublinearity"] = {{"pass", true}};
  }
  SublinearCertificate cert = sublinear_support(sample, values, cone, p, lp_opts);
  out["g_matrix"] = mat_to_json(cert.g);
  emit(out);
  return kExitPass;
}

int run_mt2(const InstanceDocument& doc, const SupportOptions& opts) {
  const Json& block = task_block(doc, "mt2");
  Mt2Input input;
  const Json& aj = block.at("a_maps");
  for (std::size_t i = 0; i < aj.size(); ++i)
    input.a_maps.push_back(mat_from_json(aj[i], "$.mt2.a_maps[" + std::to_string(i) + "]"));
  const Json& Aj = block.at("A_maps");
  for (std::size_t i = 0; i < Aj.size(); ++i)
    input.A_maps.push_back(mat_from_json(Aj[i], "$.mt2.A_maps[" + std::to_string(i) + "]"));
  input.cone = named_cone(doc, block.at("cone").get<std::string>());
  const Json& gj = block.at("grid");
  for (std::size_t i = 0; i < gj.size(); ++i)
    input.grid.push_back(vec_from_json(gj[i], "$.mt2.grid[" + std::to_string(i) + "]"));
  const Json& fj = block.at("f");
  for (std::size_t i = 0; i < fj.size(); ++i) {
    const std::string path = "$.mt2.f[" + std::to_string(i) + "]";
    input.f_values.push_back(fj[i].is_array() ? vec_from_json(fj[i], path)
                                              : VecQ{rational_from_json(fj[i], path)});
  }
  input.p_index = index_from(block.at("p"), "$.mt2.p", input.grid.size());
  Mt2Compiled compiled = mt2_compile(input, opts.max_cells);
  SupportCertificate cert = support_extend(compiled.instance, opts);
  Json out;
  out["conditions"] = {{"i", "pass"}, {"ii", "pass"}, {"iii", "pass"}, {"iv", "pass"}};
  out["interior_via_reduction"] = compiled.interior_via_reduction;
  out["certificate"] = certificate_json(cert);
  emit(out);
  return kExitPass;
}

int run_ri(const InstanceDocument& doc, const SupportOptions& opts) {
  const Json& block = task_block(doc, "ri");
  RiInstance inst;
  inst.a = mat_from_json(block.at("a_matrix"), "$.ri.a_matrix");
  inst.dim = inst.a.rows();
  const Json& hs = block.at("halfspaces");
  for (std::size_t i = 0; i < hs.size(); ++i)
    inst.membership.push_back(row_from_json(hs[i], "$.ri.halfspaces[" + std::to_string(i) + "]"));
  inst.p = vec_from_json(block.at("p"), "$.ri.p");
  inst.x = vec_from_json(block.at("x"), "$.ri.x");
  if (block.contains("n_max")) inst.n_max = block.at("n_max").get<unsigned>();
  RiCertificate cert = ri_certificate(inst, opts.max_cells);
  Json out;
  out["n"] = cert.n;
  Json chain = Json::array();
  for (const auto& v : cert.chain) chain.push_back(vec_to_json(v));
  out["chain"] = std::move(chain);
  out["memberships_ok"] = cert.memberships_ok;
  out["identities_ok"] = cert.identities_ok;
  out["domain_closed"] = cert.domain_closed;
  emit(out);
  return (cert.memberships_ok && cert.identities_ok) ? kExitPass : kExitFalse;
}

int run_delta(const InstanceDocument& doc, const SolveOptions& lp_opts) {
  const Json& block = task_block(doc, "delta");
  DeltaInstance inst;
  const Json& sj = block.at("sample");
  for (std::size_t i = 0; i < sj.size(); ++i)
    inst.sample.push_back(vec_from_json(sj[i], "$.delta.sample[" + std::to_string(i) + "]"));
  inst.s = rational_from_json(block.at("s"), "$.delta.s");
  inst.t = rational_from_json(block.at("t"), "$.delta.t");
  const Json& Fj = block.at("F");
  for (std::size_t i = 0; i < Fj.size(); ++i) {
    const std::string path = "$.delta.F[" + std::to_string(i) + "]";
    inst.F.push_back(Fj[i].is_array() ? vec_from_json(Fj[i], path)
                                      : VecQ{rational_from_json(Fj[i], path)});
  }
  const Json& fj = block.at("f");
  for (std::size_t i = 0; i < fj.size(); ++i)
    inst.f.push_back(rational_from_json(fj[i], "$.delta.f[" + std::to_string(i) + "]"));
  inst.p_index = index_from(block.at("p"), "$.delta.p", inst.sample.size());
  if (block.contains("norm")) {
    std::string n = block.at("norm").get<std::string>();
    inst.norm = n == "l1" ? NormKind::l1 : n == "linf" ? NormKind::linf : NormKind::l2;
  }
  Json out;
  if (block.contains("A") && block.contains("a")) {
    std::vector<VecQ> A;
    std::vector<Rational> a;
    const Json& Aj = block.at("A");
    for (std::size_t i = 0; i < Aj.size(); ++i) {
      const std::string path = "$.delta.A[" + std::to_string(i) + "]";
      A.push_back(Aj[i].is_array() ? vec_from_json(Aj[i], path)
                                   : VecQ{rational_from_json(Aj[i], path)});
    }
    const Json& aj = block.at("a");
    for (std::size_t i = 0; i < aj.size(); ++i)
      a.push_back(rational_from_json(aj[i], "$.delta.a[" + std::to_string(i) + "]"));
    auto failures = verify_delta_certificate(inst, A, a);
    out["verified"] = failures.empty();
    if (!failures.empty()) out["failures"] = failures;
    emit(out);
    return failures.empty() ? kExitPass : kExitFalse;
  }
  DeltaCertificate cert = delta_support(inst, lp_opts);
  Json A = Json::array(), a = Json::array();
  for (const auto& v : cert.A) A.push_back(vec_to_json(v));
  for (const auto& q : cert.a) a.push_back(rational_to_json(q));
  out["A"] = std::move(A);
  out["a"] = std::move(a);
  emit(out);
  return kExitPass;
}

int run_cone(const InstanceDocument& doc, const std::string& action, const std::string& cone_name,
             const std::string& norm_flag) {
  const RationalCone& cone = named_cone(doc, cone_name);
  Json out;
  out["cone"] = cone_name;
  if (action == "dual") {
    if (const auto* pc = std::get_if<PolyhedralCone>(&cone)) {
      Json ineqs = Json::array();
      for (const auto& g : dual_cone(*pc)) ineqs.push_back(vec_to_json(g));
      out["dual_inequalities"] = std::move(ineqs);
    } else {
      const auto& lz = std::get<LorenzCone>(cone);
      out["dual_membership"] = {{"rule", "dual_norm(phi) <= epsilon * c"},
                                {"epsilon", rational_to_json(lz.epsilon)},
                                {"norm", norm_name(lz.norm)}};
    }
    emit(out);
    return kExitPass;
  }
  if (action == "sharp") {
    auto res = is_sharp(cone);
    if (auto* w = std::get_if<SharpnessWitness>(&res)) {
      out["sharp"] = true;
      out["phi"] = vec_to_json(w->phi);
      emit(out);
      return kExitPass;
    }
    out["sharp"] = false;
    out["refutation_multipliers"] = vec_to_json(std::get<SharpnessRefutation>(res).multipliers);
    emit(out);
    return kExitFalse;
  }
  if (action == "salient") {
    const auto* pc = std::get_if<PolyhedralCone>(&cone);
    if (!pc) fail(Errc::schema_error, "salient check applies to polyhedral cones");
    if (auto w = is_salient_cone(*pc)) {
      out["salient"] = false;
      out["witness"] = vec_to_json(*w);
      emit(out);
      return kExitFalse;
    }
    out["salient"] = true;
    emit(out);
    return kExitPass;
  }
  if (action == "control") {
    NormKind norm = norm_flag == "l1"     ? NormKind::l1
                    : norm_flag == "linf" ? NormKind::linf
                                          : NormKind::l2;
    auto cert = controllability_functional(cone, norm);
    out["phi"] = vec_to_json(cert.phi);
    out["scale"] = rational_to_json(cert.scale);
    out["norm"] = norm_flag;
    emit(out);
    return kExitPass;
  }
  fail(Errc::schema_error, "cone action must be one of dual, sharp, salient, control");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized-convexity verification and support-construction engine"};
  app.require_subcommand(1);

  std::string file, set_name, function_name, expect, cone_name, cone_action, norm_flag = "l1";
  std::optional<std::size_t> point_flag;
  SupportOptions opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "instance JSON file")->required();
    cmd->add_option("--max-cells", opts.max_cells, "dense-table cell budget");
    cmd->add_option("--max-pivots", opts.lp.max_pivots, "simplex pivot cap");
  };

  auto* c_check = app.add_subcommand("check", "structural hypothesis checks");
  add_common(c_check);
  auto* c_hull = app.add_subcommand("hull", "closure hull of a named set");
  add_common(c_hull);
  c_hull->add_option("--set", set_name, "set name")->required();
  auto* c_ehull = app.add_subcommand("extreme-hull", "extreme hull of a named set");
  add_common(c_ehull);
  c_ehull->add_option("--set", set_name, "set name")->required();
  auto* c_int = app.add_subcommand("interior", "interior points of the carrier");
  add_common(c_int);
  auto* c_bnd = app.add_subcommand("boundary", "boundary of the carrier");
  add_common(c_bnd);
  auto* c_cls = app.add_subcommand("classify-map", "convex/concave/affine verdicts");
  add_common(c_cls);
  c_cls->add_option("--function", function_name, "function name")->required();
  c_cls->add_option("--expect", expect, "assert one verdict: convex|concave|affine");
  auto* c_sup = app.add_subcommand("support", "affine minorant through an anchor set");
  add_common(c_sup);
  c_sup->add_flag("--override-preconditions", opts.override_preconditions,
                  "solve even when hypothesis checks fail");
  auto* c_supat = app.add_subcommand("support-at", "affine minorant at an interior point");
  add_common(c_supat);
  c_supat->add_option("--point", point_flag, "anchor element id");
  c_supat->add_flag("--override-preconditions", opts.override_preconditions,
                    "solve even when hypothesis checks fail");
  auto* c_sub = app.add_subcommand("subadditive", "additive minorant for a subadditive map");
  add_common(c_sub);
  auto* c_subl = app.add_subcommand("sublinear", "linear minorant on a sampled cone");
  add_common(c_subl);
  auto* c_mt2 = app.add_subcommand("mt2", "compile and solve an additive-maps instance");
  add_common(c_mt2);
  auto* c_ri = app.add_subcommand("ri-cert", "dyadic interior certificate chain");
  add_common(c_ri);
  auto* c_delta = app.add_subcommand("delta-support", "support for delta-convex samples");
  add_common(c_delta);
  auto* c_cone = app.add_subcommand("cone", "cone computations: dual|sharp|salient|control");
  c_cone->add_option("action", cone_action, "dual|sharp|salient|control")->required();
  add_common(c_cone);
  c_cone->add_option("--cone", cone_name, "cone name")->required();
  c_cone->add_option("--norm", norm_flag, "l1|linf|l2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  try {
    InstanceDocument doc = parse_instance(read_file(file));
    if (c_check->parsed()) return run_check(doc);
    if (c_hull->parsed()) return run_hull(doc, set_name, false);
    if (c_ehull->parsed()) return run_hull(doc, set_name, true);
    if (c_int->parsed()) return run_interior(doc, false);
    if (c_bnd->parsed()) return run_interior(doc, true);
    if (c_cls->parsed()) return run_classify(doc, function_name, expect);
    if (c_sup->parsed()) return run_support(doc, opts);
    if (c_supat->parsed()) return run_support_at(doc, point_flag, opts);
    if (c_sub->parsed()) return run_subadditive(doc, opts);
    if (c_subl->parsed()) return run_sublinear(doc, opts.lp);
    if (c_mt2->parsed()) return run_mt2(doc, opts);
    if (c_ri->parsed()) return run_ri(doc, opts);
    if (c_delta->parsed()) return run_delta(doc, opts.lp);
    if (c_cone->parsed()) return run_cone(doc, cone_action, cone_name, norm_flag);
  } catch (const Error& e) {
    return emit_error(e);
  } catch (const std::exception& e) {
    Json j;
    j["error"]["kind"] = "InternalError";
    j["error"]["message"] = e.what();
    emit(j);
    return kExitDefect;
  }
  return kExitInvalid;
}
