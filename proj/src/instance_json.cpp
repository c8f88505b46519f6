#include "opconvex/instance_json.hpp"

#include <algorithm>

namespace opconvex {

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& message) {
  fail(Errc::schema_error, path + ": " + message);
}

const Json& expect(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) schema_fail(path + "." + key, "missing");
  return j.at(key);
}

std::size_t size_from(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() || j.get<std::size_t>() < 1)
    schema_fail(path, "must be a positive integer");
  return j.get<std::size_t>();
}

// Flattens a nested table of depth `arity`, each level of width `size`.
void flatten_table(const Json& j, std::size_t arity, std::size_t size,
                   std::vector<ElementId>& out, const std::string& path) {
  if (arity == 0) {
    if (!j.is_number_unsigned()) schema_fail(path, "table entry must be a nonnegative integer");
    std::size_t v = j.get<std::size_t>();
    if (v >= size) schema_fail(path, "table entry outside the carrier");
    out.push_back(v);
    return;
  }
  if (!j.is_array() || j.size() != size)
    schema_fail(path, "expected an array of length " + std::to_string(size));
  for (std::size_t i = 0; i < size; ++i)
    flatten_table(j[i], arity - 1, size, out, path + "[" + std::to_string(i) + "]");
}

Json nest_table(const std::vector<ElementId>& flat, std::size_t arity, std::size_t size,
                std::size_t& cursor) {
  if (arity == 0) return flat[cursor++];
  Json arr = Json::array();
  for (std::size_t i = 0; i < size; ++i) arr.push_back(nest_table(flat, arity - 1, size, cursor));
  return arr;
}

NormKind norm_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_fail(path, "norm must be a string");
  std::string s = j.get<std::string>();
  if (s == "l1") return NormKind::l1;
  if (s == "linf") return NormKind::linf;
  if (s == "l2") return NormKind::l2;
  schema_fail(path, "norm must be one of l1, linf, l2");
}

RationalCone cone_from_json(const Json& j, const std::string& path) {
  std::string kind = expect(j, "kind", path).get<std::string>();
  if (kind == "polyhedral") {
    const Json& gens = expect(j, "generators", path);
    if (!gens.is_array() || gens.empty()) schema_fail(path + ".generators", "nonempty array required");
    std::vector<VecQ> g;
    for (std::size_t i = 0; i < gens.size(); ++i)
      g.push_back(vec_from_json(gens[i], path + ".generators[" + std::to_string(i) + "]"));
    std::size_t dim = g.front().size();
    return make_polyhedral(dim, std::move(g));
  }
  if (kind == "lorenz") {
    Rational eps = rational_from_json(expect(j, "epsilon", path), path + ".epsilon");
    std::size_t dim = size_from(expect(j, "dim", path), path + ".dim");
    NormKind norm = norm_from_json(expect(j, "norm", path), path + ".norm");
    if (eps <= 0) schema_fail(path + ".epsilon", "must be positive");
    return make_lorenz(std::move(eps), dim, norm);
  }
  schema_fail(path + ".kind", "must be 'polyhedral' or 'lorenz'");
}

Json cone_to_json(const RationalCone& cone) {
  Json j;
  if (const auto* pc = std::get_if<PolyhedralCone>(&cone)) {
    j["kind"] = "polyhedral";
    Json gens = Json::array();
    for (const auto& g : pc->generators) gens.push_back(vec_to_json(g));
    j["generators"] = gens;
  } else {
    const auto& lz = std::get<LorenzCone>(cone);
    j["kind"] = "lorenz";
    j["epsilon"] = rational_to_json(lz.epsilon);
    j["dim"] = lz.base_dim;
    j["norm"] = norm_name(lz.norm);
  }
  return j;
}

OperationFamily family_from_json(const Json& structure, const std::string& path) {
  std::size_t size = size_from(expect(structure, "carrier_size", path), path + ".carrier_size");
  Carrier carrier = Carrier::plain(size);
  if (structure.contains("labels")) {
    const Json& labels = structure.at("labels");
    if (!labels.is_array() || labels.size() != size)
      schema_fail(path + ".labels", "must list one label per element");
    std::vector<std::string> ls;
    for (const auto& l : labels) ls.push_back(l.get<std::string>());
    carrier = Carrier::labeled(std::move(ls));
  }
  const Json& ops = expect(structure, "operations", path);
  if (!ops.is_array()) schema_fail(path + ".operations", "must be an array");
  std::vector<std::pair<std::string, Operation>> parsed;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    std::string opath = path + ".operations[" + std::to_string(i) + "]";
    const Json& op = ops[i];
    std::string name = expect(op, "name", opath).get<std::string>();
    std::size_t arity = size_from(expect(op, "arity", opath), opath + ".arity");
    std::vector<ElementId> table;
    flatten_table(expect(op, "table", opath), arity, size, table, opath + ".table");
    try {
      parsed.emplace_back(name, Operation(size, arity, std::move(table)));
    } catch (const Error& e) {
      schema_fail(opath + ".table", e.what());
    }
  }
  try {
    return OperationFamily(std::move(carrier), std::move(parsed));
  } catch (const Error& e) {
    schema_fail(path + ".operations", e.what());
  }
}

Json family_to_json(const OperationFamily& family) {
  Json j;
  j["carrier_size"] = family.carrier_size();
  if (!family.carrier().labels.empty()) j["labels"] = family.carrier().labels;
  Json ops = Json::array();
  for (std::size_t i = 0; i < family.op_count(); ++i) {
    const Operation& op = family.op(i);
    Json o;
    o["name"] = family.names()[i];
    o["arity"] = op.arity();
    std::size_t cursor = 0;
    o["table"] = nest_table(op.table(), op.arity(), family.carrier_size(), cursor);
    ops.push_back(std::move(o));
  }
  j["operations"] = std::move(ops);
  return j;
}

OrderedRange range_from_json(const Json& j, const std::map<std::string, RationalCone>& cones,
                             const std::string& path) {
  std::string flavor = expect(j, "flavor", path).get<std::string>();
  if (flavor == "finite") {
    const Json& pj = expect(j, "poset", path);
    std::size_t size = size_from(expect(pj, "size", path + ".poset"), path + ".poset.size");
    const Json& leq = expect(pj, "leq", path + ".poset");
    if (!leq.is_array() || leq.size() != size)
      schema_fail(path + ".poset.leq", "must be a size x size matrix");
    std::vector<bool> m;
    for (std::size_t a = 0; a < size; ++a) {
      if (!leq[a].is_array() || leq[a].size() != size)
        schema_fail(path + ".poset.leq", "must be a size x size matrix");
      for (std::size_t b = 0; b < size; ++b) {
        const Json& cell = leq[a][b];
        if (cell.is_boolean())
          m.push_back(cell.get<bool>());
        else if (cell.is_number_unsigned() && cell.get<std::size_t>() <= 1)
          m.push_back(cell.get<std::size_t>() == 1);
        else
          schema_fail(path + ".poset.leq", "entries must be booleans or 0/1");
      }
    }
    FinitePoset poset = [&] {
      try {
        return FinitePoset(size, std::move(m));
      } catch (const Error& e) {
        schema_fail(path + ".poset", e.what());
      }
    }();
    Json structure;
    structure["carrier_size"] = size;
    structure["operations"] = expect(j, "operations", path);
    OperationFamily ops = family_from_json(structure, path);
    return OrderedRange{make_finite_range(std::move(poset), std::move(ops))};
  }
  if (flavor == "linear") {
    std::size_t dim = size_from(expect(j, "dim", path), path + ".dim");
    const Json& cj = expect(j, "cone", path);
    RationalCone cone = [&] {
      if (cj.is_string()) {
        auto it = cones.find(cj.get<std::string>());
        if (it == cones.end()) schema_fail(path + ".cone", "unknown cone name");
        return it->second;
      }
      return cone_from_json(cj, path + ".cone");
    }();
    const Json& mats = expect(j, "matrices", path);
    if (!mats.is_object()) schema_fail(path + ".matrices", "must map operation names to slot lists");
    std::vector<std::pair<std::string, std::vector<MatQ>>> ops;
    for (const auto& [name, slots] : mats.items()) {
      if (!slots.is_array() || slots.empty())
        schema_fail(path + ".matrices." + name, "must be a nonempty array of matrices");
      std::vector<MatQ> ms;
      for (std::size_t i = 0; i < slots.size(); ++i)
        ms.push_back(mat_from_json(slots[i], path + ".matrices." + name + "[" + std::to_string(i) + "]"));
      ops.emplace_back(name, std::move(ms));
    }
    try {
      return OrderedRange{make_linear_range(dim, std::move(cone), std::move(ops))};
    } catch (const Error& e) {
      schema_fail(path, e.what());
    }
  }
  schema_fail(path + ".flavor", "must be 'finite' or 'linear'");
}

Json range_to_json(const OrderedRange& range) {
  Json j;
  if (const auto* fr = std::get_if<FiniteRange>(&range)) {
    j["flavor"] = "finite";
    Json pj;
    pj["size"] = fr->order.size();
    Json rows = Json::array();
    for (std::size_t a = 0; a < fr->order.size(); ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < fr->order.size(); ++b) row.push_back(fr->order.leq(a, b) ? 1 : 0);
      rows.push_back(std::move(row));
    }
    pj["leq"] = std::move(rows);
    j["poset"] = std::move(pj);
    j["operations"] = family_to_json(fr->ops)["operations"];
  } else {
    const auto& lr = std::get<LinearRange>(range);
    j["flavor"] = "linear";
    j["dim"] = lr.dim;
    j["cone"] = cone_to_json(lr.order);
    Json mats;
    for (const auto& name : lr.names) {
      Json slots = Json::array();
      for (const auto& m : lr.matrices(name)) slots.push_back(mat_to_json(m));
      mats[name] = std::move(slots);
    }
    j["matrices"] = std::move(mats);
  }
  return j;
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    auto q = try_parse_rational(j.get<std::string>());
    if (!q) schema_fail(path, "invalid rational literal '" + j.get<std::string>() + "'");
    return *q;
  }
  schema_fail(path, "rationals must be integers or 'p/q' strings");
}

Json rational_to_json(const Rational& q) { return to_string(q); }

VecQ vec_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_fail(path, "expected a nonempty array of rationals");
  VecQ v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

Json vec_to_json(const VecQ& v) {
  Json arr = Json::array();
  for (const auto& q : v) arr.push_back(rational_to_json(q));
  return arr;
}

MatQ mat_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_fail(path, "expected a nonempty matrix");
  std::size_t rows = j.size();
  std::size_t cols = 0;
  MatQ m;
  for (std::size_t r = 0; r < rows; ++r) {
    VecQ row = vec_from_json(j[r], path + "[" + std::to_string(r) + "]");
    if (r == 0) {
      cols = row.size();
      m = MatQ(rows, cols);
    } else if (row.size() != cols) {
      schema_fail(path, "ragged matrix");
    }
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = std::move(row[c]);
  }
  return m;
}

Json mat_to_json(const MatQ& m) {
  Json arr = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m.at(r, c)));
    arr.push_back(std::move(row));
  }
  return arr;
}

LpRow row_from_json(const Json& j, const std::string& path) {
  VecQ coeffs = vec_from_json(expect(j, "coeffs", path), path + ".coeffs");
  std::string rel = expect(j, "rel", path).get<std::string>();
  Rational rhs = rational_from_json(expect(j, "rhs", path), path + ".rhs");
  Rel r;
  if (rel == "le")
    r = Rel::le;
  else if (rel == "ge")
    r = Rel::ge;
  else if (rel == "eq")
    r = Rel::eq;
  else
    schema_fail(path + ".rel", "must be 'le', 'ge' or 'eq'");
  return LpRow{std::move(coeffs), r, std::move(rhs)};
}

Json subset_to_json(const Subset& s) {
  Json arr = Json::array();
  for (auto i : s.indices()) arr.push_back(i);
  return arr;
}

InstanceDocument parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema_fail("$", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) schema_fail("$", "top level must be an object");
  if (!j.contains("schema_version") || !j["schema_version"].is_string() ||
      j["schema_version"].get<std::string>() != "1")
    schema_fail("$.schema_version", "must be the string \"1\"");

  InstanceDocument doc{
      "1", family_from_json(expect(j, "structure", "$"), "$.structure"), std::nullopt, {}, {}, {},
      Json::object()};

  if (j.contains("cones")) {
    if (!j["cones"].is_object()) schema_fail("$.cones", "must be an object");
    for (const auto& [name, cj] : j["cones"].items())
      doc.cones.emplace(name, cone_from_json(cj, "$.cones." + name));
  }
  if (j.contains("range"))
    doc.range = range_from_json(j["range"], doc.cones, "$.range");
  if (j.contains("sets")) {
    if (!j["sets"].is_object()) schema_fail("$.sets", "must be an object");
    for (const auto& [name, sj] : j["sets"].items()) {
      if (!sj.is_array()) schema_fail("$.sets." + name, "must be an index array");
      Subset s(doc.family.carrier_size());
      for (const auto& e : sj) {
        if (!e.is_number_unsigned() || e.get<std::size_t>() >= doc.family.carrier_size())
          schema_fail("$.sets." + name, "index outside the carrier");
        s.add(e.get<std::size_t>());
      }
      doc.sets.emplace(name, std::move(s));
    }
  }
  if (j.contains("functions")) {
    if (!j["functions"].is_object()) schema_fail("$.functions", "must be an object");
    for (const auto& [name, fj] : j["functions"].items()) {
      if (!fj.is_array()) schema_fail("$.functions." + name, "must be a value array");
      doc.functions.emplace(name, fj);
    }
  }
  for (const char* task : {"support", "subadditive", "sublinear", "mt2", "ri", "delta"})
    if (j.contains(task)) doc.tasks[task] = j[task];
  return doc;
}

Json serialize_instance(const InstanceDocument& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["structure"] = family_to_json(doc.family);
  if (doc.range) j["range"] = range_to_json(*doc.range);
  if (!doc.sets.empty()) {
    Json sets;
    for (const auto& [name, s] : doc.sets) sets[name] = subset_to_json(s);
    j["sets"] = std::move(sets);
  }
  if (!doc.functions.empty()) {
    Json fns;
    for (const auto& [name, f] : doc.functions) fns[name] = f;
    j["functions"] = std::move(fns);
  }
  if (!doc.cones.empty()) {
    Json cones;
    for (const auto& [name, c] : doc.cones) cones[name] = cone_to_json(c);
    j["cones"] = std::move(cones);
  }
  for (const auto& [task, body] : doc.tasks.items()) j[task] = body;
  return j;
}

const Subset& named_set(const InstanceDocument& doc, const std::string& name) {
  auto it = doc.sets.find(name);
  if (it == doc.sets.end()) fail(Errc::schema_error, "$.sets." + name + ": not defined");
  return it->second;
}

const RationalCone& named_cone(const InstanceDocument& doc, const std::string& name) {
  auto it = doc.cones.find(name);
  if (it == doc.cones.end()) fail(Errc::schema_error, "$.cones." + name + ": not defined");
  return it->second;
}

FunctionTable materialize_function(const InstanceDocument& doc, const std::string& name) {
  auto it = doc.functions.find(name);
  if (it == doc.functions.end()) fail(Errc::schema_error, "$.functions." + name + ": not defined");
  const Json& fj = it->second;
  const std::string path = "$.functions." + name;
  if (!doc.range) fail(Errc::schema_error, "$.range: required to interpret function values");
  if (fj.size() != doc.family.carrier_size())
    schema_fail(path, "must list one value per carrier element");
  if (std::holds_alternative<FiniteRange>(*doc.range)) {
    const auto& fr = std::get<FiniteRange>(*doc.range);
    std::vector<ElementId> ids;
    for (std::size_t i = 0; i < fj.size(); ++i) {
      const Json& e = fj[i];
      if (!e.is_number_unsigned() || e.get<std::size_t>() >= fr.order.size())
        schema_fail(path + "[" + std::to_string(i) + "]", "must be a range element id");
      ids.push_back(e.get<std::size_t>());
    }
    return FunctionTable::finite(std::move(ids));
  }
  const auto& lr = std::get<LinearRange>(*doc.range);
  std::vector<VecQ> vecs;
  for (std::size_t i = 0; i < fj.size(); ++i) {
    const std::string epath = path + "[" + std::to_string(i) + "]";
    VecQ v = fj[i].is_array() ? vec_from_json(fj[i], epath) : VecQ{rational_from_json(fj[i], epath)};
    if (v.size() != lr.dim) schema_fail(epath, "value dimension mismatch");
    vecs.push_back(std::move(v));
  }
  return FunctionTable::linear(std::move(vecs));
}

std::vector<Rational> materialize_scalar_function(const InstanceDocument& doc,
                                                  const std::string& name) {
  auto it = doc.functions.find(name);
  if (it == doc.functions.end()) fail(Errc::schema_error, "$.functions." + name + ": not defined");
  const Json& fj = it->second;
  const std::string path = "$.functions." + name;
  if (fj.size() != doc.family.carrier_size())
    schema_fail(path, "must list one value per carrier element");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < fj.size(); ++i)
    out.push_back(rational_from_json(fj[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace opconvex
