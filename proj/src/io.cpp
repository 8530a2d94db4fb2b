#include "mckay/io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace mckay {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { fail(ErrorCode::ParseError, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_fail(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing field '") + key + "'");
  return *it;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) parse_fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::string coefficient_text(const Cyclo& c, int conductor) {
  const Cyclo m = c.minimized();
  if (m.is_rational()) return m.rational_value().get_str();
  return m.embed(conductor).to_string();
}

Cyclo parse_coefficient(const Json& j, int conductor) {
  if (j.is_number_integer()) return Cyclo(j.get<long>());
  if (!j.is_string()) parse_fail("coefficient must be a string or an integer");
  return Cyclo::parse(j.get<std::string>(), conductor).minimized();
}

int conductor_of(const Cyclo& c) { return c.minimized().conductor(); }

int element_conductor(const std::map<Path, Cyclo>& e) {
  int m = 1;
  for (const auto& [p, c] : e) m = std::lcm(m, conductor_of(c));
  return m;
}

int matrix_conductor(const CycloMatrix& g) {
  int m = 1;
  for (const auto& e : g.entries()) m = std::lcm(m, conductor_of(e));
  return m;
}

Json path_terms_json(const PathElement& e, int conductor) {
  Json out = Json::array();
  for (const auto& [p, c] : e)
    out.push_back({{"coefficient", coefficient_text(c, conductor)}, {"start", p.start}, {"path", p.arrows}});
  return out;
}

std::vector<int> int_list(const Json& j) {
  if (!j.is_array()) parse_fail("expected a list of arrow ids");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) parse_fail("arrow ids must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

Json presentation_body(const GinzburgPresentation& pres, int conductor) {
  Json j;
  j["format"] = "mckayqp-presentation";
  j["n"] = pres.n;
  j["conductor"] = conductor;
  j["from_potential"] = pres.from_potential;
  Json vs = Json::array();
  for (const auto& v : pres.quiver.vertices) vs.push_back({{"id", v.id}, {"label", v.label}, {"dim", v.dim}});
  j["vertices"] = vs;
  Json as = Json::array();
  for (const auto& a : pres.quiver.arrows)
    as.push_back({{"id", a.id},
                  {"name", a.name},
                  {"source", a.source},
                  {"target", a.target},
                  {"degree", a.degree},
                  {"weight", a.weight},
                  {"kind", std::string(arrow_kind_name(a.kind))},
                  {"epsilon", a.epsilon},
                  {"partner", a.partner}});
  j["arrows"] = as;
  Json w = Json::array();
  for (const auto& [p, c] : pres.potential) w.push_back({{"coefficient", coefficient_text(c, conductor)}, {"cycle", p.arrows}});
  j["potential"] = w;
  Json d = Json::array();
  for (std::size_t k = 0; k < pres.differential.size(); ++k)
    d.push_back({{"arrow", k}, {"terms", path_terms_json(pres.differential[k], conductor)}});
  j["differential"] = d;
  return j;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ValidationError, "cannot write '" + path + "'");
  out << text;
}

Json matrix_json(const CycloMatrix& m, int conductor) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(coefficient_text(m(r, c), conductor));
    rows.push_back(row);
  }
  return rows;
}

CycloMatrix parse_matrix(const Json& j, int conductor) {
  if (!j.is_array() || j.empty()) parse_fail("matrix must be a nonempty list of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Cyclo> entries;
  for (const auto& row : j) {
    if (!row.is_array()) parse_fail("matrix rows must be lists");
    if (cols == 0) cols = row.size();
    if (row.size() != cols || cols == 0) fail(ErrorCode::ValidationError, "matrix rows have unequal lengths");
    for (const auto& e : row) entries.push_back(parse_coefficient(e, conductor));
  }
  return CycloMatrix(rows, cols, std::move(entries));
}

namespace {

GroupDocument parse_group_impl(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  GroupDocument doc;
  if (!j.is_object()) parse_fail("group document must be an object");
  if (j.contains("name")) {
    if (!j["name"].is_string()) parse_fail("field 'name' must be a string");
    doc.name = j["name"].get<std::string>();
  }
  doc.spec.n = int_field(j, "n");
  if (doc.spec.n < 1) fail(ErrorCode::ValidationError, "n must be positive");
  doc.spec.conductor = j.contains("conductor") ? int_field(j, "conductor") : 1;
  if (doc.spec.conductor < 1) fail(ErrorCode::ValidationError, "conductor must be positive");
  const Json& gens = field(j, "generators");
  if (!gens.is_array() || gens.empty()) parse_fail("'generators' must be a nonempty list of matrices");
  const auto n = static_cast<std::size_t>(doc.spec.n);
  for (const auto& g : gens) {
    CycloMatrix m = parse_matrix(g, doc.spec.conductor);
    if (m.rows() != n || m.cols() != n) fail(ErrorCode::ValidationError, "generator is not " + std::to_string(n) + "x" + std::to_string(n));
    doc.spec.generators.push_back(std::move(m));
  }
  if (j.contains("labels")) {
    const Json& ls = j["labels"];
    if (!ls.is_array()) parse_fail("'labels' must be a list of strings");
    for (const auto& l : ls) {
      if (!l.is_string()) parse_fail("'labels' must be a list of strings");
      doc.spec.labels.push_back(l.get<std::string>());
    }
    if (doc.spec.labels.size() != doc.spec.generators.size())
      fail(ErrorCode::ValidationError, "one label per generator expected");
  }
  if (j.contains("irreps")) {
    const Json& irr = j["irreps"];
    if (!irr.is_array()) parse_fail("'irreps' must be a list");
    std::vector<IrrepRecord> records;
    for (const auto& r : irr) {
      IrrepRecord rec;
      if (r.contains("label")) {
        if (!r["label"].is_string()) parse_fail("irrep label must be a string");
        rec.label = r["label"].get<std::string>();
      }
      const int dim = int_field(r, "dim");
      if (dim < 1) fail(ErrorCode::ValidationError, "irrep dimension must be positive");
      rec.dim = static_cast<std::size_t>(dim);
      const Json& images = field(r, "gen_images");
      if (!images.is_array() || images.size() != doc.spec.generators.size())
        fail(ErrorCode::ValidationError, "irrep '" + rec.label + "' needs one image per generator");
      for (const auto& m : images) {
        CycloMatrix img = parse_matrix(m, doc.spec.conductor);
        if (img.rows() != rec.dim || img.cols() != rec.dim)
          fail(ErrorCode::ValidationError, "irrep '" + rec.label + "' image has the wrong shape");
        rec.gen_images.push_back(std::move(img));
      }
      records.push_back(std::move(rec));
    }
    doc.irreps = std::move(records);
  }
  return doc;
}

}  // namespace

GroupDocument parse_group_document(const std::string& text) {
  try {
    return parse_group_impl(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(std::string("malformed group document: ") + e.what());
  }
}

GroupDocument load_group_document(const std::string& path) { return parse_group_document(read_text_file(path)); }

Json group_document_json(const GroupDocument& doc) {
  int m = doc.spec.conductor;
  Json j;
  if (!doc.name.empty()) j["name"] = doc.name;
  j["n"] = doc.spec.n;
  j["conductor"] = m;
  Json gens = Json::array();
  for (const auto& g : doc.spec.generators) gens.push_back(matrix_json(g, std::lcm(m, matrix_conductor(g))));
  j["generators"] = gens;
  if (!doc.spec.labels.empty()) j["labels"] = doc.spec.labels;
  if (doc.irreps) {
    Json irr = Json::array();
    for (const auto& r : *doc.irreps) {
      Json images = Json::array();
      for (const auto& g : r.gen_images) images.push_back(matrix_json(g, std::lcm(m, matrix_conductor(g))));
      irr.push_back({{"label", r.label}, {"dim", r.dim}, {"gen_images", images}});
    }
    j["irreps"] = irr;
  }
  return j;
}

IrrepSet resolve_irreps(const GroupPtr& group, const GroupDocument& doc) {
  if (!doc.irreps) {
    if (!group->is_abelian())
      fail(ErrorCode::ValidationError,
           "irreps are required for a non-abelian group: add an 'irreps' section listing {label, dim, gen_images}");
    return abelian_irreps(group);
  }
  std::vector<Representation> reps;
  for (const auto& rec : *doc.irreps) {
    Representation r;
    r.group = group;
    r.dim = rec.dim;
    r.label = rec.label;
    std::vector<std::optional<CycloMatrix>> images(group->generator_count());
    for (std::size_t k = 0; k < rec.gen_images.size(); ++k) {
      auto& slot = images[group->spec_generator_position(k)];
      if (slot && *slot != rec.gen_images[k])
        fail(ErrorCode::ValidationError, "irrep '" + rec.label + "' maps equal generators to different images");
      slot = rec.gen_images[k];
    }
    for (auto& img : images) r.gen_images.push_back(*img);
    reps.push_back(std::move(r));
  }
  return validate_irrep_set(group, std::move(reps));
}

int presentation_conductor(const GinzburgPresentation& pres) {
  int m = element_conductor(pres.potential);
  for (const auto& d : pres.differential) m = std::lcm(m, element_conductor(d));
  return m;
}

Json path_element_json(const PathElement& e, int conductor) { return path_terms_json(e, conductor); }

Json h0_json(const H0Presentation& h0) {
  int m = 1;
  for (const auto& r : h0.relations) m = std::lcm(m, element_conductor(r));
  Json j;
  j["format"] = "mckayqp-h0";
  j["conductor"] = m;
  Json vs = Json::array();
  for (const auto& v : h0.quiver.vertices) vs.push_back({{"id", v.id}, {"label", v.label}, {"dim", v.dim}});
  j["vertices"] = vs;
  Json as = Json::array();
  for (const auto& a : h0.quiver.arrows)
    as.push_back({{"id", a.id}, {"name", a.name}, {"source", a.source}, {"target", a.target}, {"weight", a.weight}});
  j["arrows"] = as;
  Json rels = Json::array();
  for (const auto& r : h0.relations) rels.push_back(path_terms_json(r, m));
  j["relations"] = rels;
  Json dims = Json::array();
  for (const auto& [k, d] : h0.weight_dims) dims.push_back({{"source", k[0]}, {"target", k[1]}, {"weight", k[2]}, {"dim", d}});
  j["weight_dims"] = dims;
  return j;
}

Json presentation_json(const GinzburgPresentation& pres) { return presentation_body(pres, presentation_conductor(pres)); }

Json mckay_json(const McKayQP& qp) {
  int m = presentation_conductor(qp.pres);
  for (const auto& [p, c] : qp.lambda) m = std::lcm(m, conductor_of(c));
  for (const auto& b : qp.pairing) m = std::lcm(m, matrix_conductor(b.gram));
  Json j = presentation_body(qp.pres, m);
  Json irr = Json::array();
  for (std::size_t i = 0; i < qp.irreps.size(); ++i)
    irr.push_back({{"vertex", i}, {"label", qp.irreps.irreps[i].label}, {"dim", qp.irreps.dim(i)}});
  j["irreps"] = irr;
  Json lam = Json::array();
  for (const auto& [p, c] : qp.lambda) lam.push_back({{"cycle", p.arrows}, {"value", coefficient_text(c, m)}});
  j["lambda"] = lam;
  Json pairing = Json::array();
  for (const auto& b : qp.pairing)
    pairing.push_back({{"weight", b.weight}, {"source", b.source}, {"target", b.target}, {"gram", matrix_json(b.gram, m)}});
  j["pairing"] = pairing;
  return j;
}

namespace {

PresentationDocument parse_presentation_impl(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  PresentationDocument doc;
  GinzburgPresentation& pres = doc.pres;
  pres.n = int_field(j, "n");
  const int m = j.contains("conductor") ? int_field(j, "conductor") : 1;
  if (m < 1) fail(ErrorCode::ValidationError, "conductor must be positive");
  pres.from_potential = j.contains("from_potential") ? j["from_potential"].get<bool>() : true;
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) parse_fail("'vertices' must be a list");
  for (const auto& v : vs)
    pres.quiver.vertices.push_back(
        {int_field(v, "id"), v.contains("label") ? v["label"].get<std::string>() : "", v.contains("dim") ? int_field(v, "dim") : 1});
  const Json& as = field(j, "arrows");
  if (!as.is_array()) parse_fail("'arrows' must be a list");
  for (const auto& a : as) {
    Arrow arrow;
    arrow.id = int_field(a, "id");
    if (arrow.id != static_cast<int>(pres.quiver.arrows.size())) fail(ErrorCode::ValidationError, "arrow ids must be consecutive from 0");
    arrow.name = a.contains("name") ? a["name"].get<std::string>() : "a" + std::to_string(arrow.id);
    arrow.source = int_field(a, "source");
    arrow.target = int_field(a, "target");
    arrow.degree = int_field(a, "degree");
    arrow.weight = a.contains("weight") ? int_field(a, "weight") : 1;
    arrow.kind = a.contains("kind") ? parse_arrow_kind(a["kind"].get<std::string>()) : ArrowKind::base;
    arrow.epsilon = a.contains("epsilon") ? int_field(a, "epsilon") : 1;
    arrow.partner = a.contains("partner") ? int_field(a, "partner") : -1;
    if (!pres.quiver.has_vertex(arrow.source) || !pres.quiver.has_vertex(arrow.target))
      fail(ErrorCode::VertexNotFound, "arrow " + arrow.name + " has an unknown endpoint");
    pres.quiver.arrows.push_back(std::move(arrow));
  }
  const auto arrow_count = static_cast<int>(pres.quiver.arrows.size());
  auto check_ids = [&](const std::vector<int>& ids) {
    for (int id : ids)
      if (id < 0 || id >= arrow_count) fail(ErrorCode::ValidationError, "arrow id " + std::to_string(id) + " out of range");
  };
  if (j.contains("potential")) {
    for (const auto& t : j["potential"]) {
      const auto cycle = int_list(field(t, "cycle"));
      check_ids(cycle);
      if (cycle.empty()) fail(ErrorCode::BadPotentialLength, "empty cycle in potential");
      add_cyclic(pres.potential, pres.quiver, Path{pres.quiver.arrows[static_cast<std::size_t>(cycle.front())].source, cycle},
                 parse_coefficient(field(t, "coefficient"), m));
    }
  }
  pres.differential.assign(pres.quiver.arrows.size(), {});
  if (j.contains("differential")) {
    for (const auto& entry : j["differential"]) {
      const int a = int_field(entry, "arrow");
      check_ids({a});
      for (const auto& t : field(entry, "terms")) {
        const auto path = int_list(field(t, "path"));
        check_ids(path);
        const Path p{int_field(t, "start"), path};
        if (!is_composable(pres.quiver, p)) fail(ErrorCode::ValidationError, "differential term is not a path");
        add_term(pres.differential[static_cast<std::size_t>(a)], p, parse_coefficient(field(t, "coefficient"), m));
      }
    }
  }
  if (j.contains("lambda")) {
    for (const auto& t : j["lambda"]) {
      const auto cycle = int_list(field(t, "cycle"));
      check_ids(cycle);
      if (cycle.empty()) parse_fail("empty lambda cycle");
      doc.lambda[Path{pres.quiver.arrows[static_cast<std::size_t>(cycle.front())].source, cycle}] =
          parse_coefficient(field(t, "value"), m);
    }
  }
  if (j.contains("pairing")) {
    for (const auto& b : j["pairing"])
      doc.pairing.push_back({int_field(b, "weight"), static_cast<std::size_t>(int_field(b, "source")),
                             static_cast<std::size_t>(int_field(b, "target")), parse_matrix(field(b, "gram"), m)});
  }
  return doc;
}

}  // namespace

PresentationDocument parse_presentation(const std::string& text) {
  try {
    return parse_presentation_impl(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(std::string("malformed presentation: ") + e.what());
  }
}

PresentationDocument load_presentation(const std::string& path) { return parse_presentation(read_text_file(path)); }

std::string quiver_dot(const GradedQuiver& q, const DotOptions& opts) {
  std::ostringstream out;
  out << "digraph " << opts.name << " {\n";
  out << "  node [shape=circle];\n";
  for (const auto& v : q.vertices) out << "  v" << v.id << " [label=\"" << v.id << ":" << v.dim << "\"];\n";
  std::map<std::tuple<int, int, int>, int> edges;
  for (const auto& a : q.arrows) {
    if (!opts.show_all && (a.kind == ArrowKind::star || a.kind == ArrowKind::loop_t)) continue;
    ++edges[{a.source, a.target, -a.degree}];
  }
  for (const auto& [key, count] : edges) {
    const auto [s, t, negdeg] = key;
    const int degree = -negdeg;
    const char* color = degree == 0 ? "black" : degree == -1 ? "red" : "gray";
    out << "  v" << s << " -> v" << t << " [color=" << color;
    if (count > 1) out << ", label=\"" << count << "\"";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mckay
