#include "toric/io.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace toric {

namespace {

using Dom = nlohmann::json;

// Builds a DOM while remembering the source text of every floating-point
// literal, keyed by JSON pointer, so decimals can be read exactly.
class RawNumberSax {
 public:
  explicit RawNumberSax(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  Dom root;
  std::map<std::string, std::string> raw;

  bool null() { return add(nullptr); }
  bool boolean(bool v) { return add(v); }
  bool number_integer(Dom::number_integer_t v) { return add(v); }
  bool number_unsigned(Dom::number_unsigned_t v) { return add(v); }
  bool number_float(Dom::number_float_t v, const Dom::string_t& s) {
    add(v);
    raw[last_path_] = s;
    return true;
  }
  bool string(Dom::string_t& v) { return add(v); }
  bool binary(Dom::binary_t&) { return fail("binary values are not supported"); }
  bool start_object(std::size_t) {
    Dom* d = place(Dom::object());
    stack_.push_back({d, last_path_});
    return true;
  }
  bool key(Dom::string_t& k) {
    if (stack_.back().node->contains(k)) {
      throw ToricError(ErrorKind::SchemaViolation, source_ + ": duplicate key '" + k + "' in " + display(stack_.back().path));
    }
    key_ = k;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) {
    Dom* d = place(Dom::array());
    stack_.push_back({d, last_path_});
    return true;
  }
  bool end_array() {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    const std::size_t end = std::min(position, text_.size());
    const auto line = 1 + std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(end), '\n');
    std::string what = ex.what();
    throw ToricError(ErrorKind::ParseError, source_ + ":" + std::to_string(line) + ": " + what);
  }

  static std::string display(const std::string& pointer) { return pointer.empty() ? "/" : pointer; }

 private:
  struct Frame {
    Dom* node;
    std::string path;
  };

  template <class V>
  bool add(V&& v) {
    place(Dom(std::forward<V>(v)));
    return true;
  }

  Dom* place(Dom v) {
    if (stack_.empty()) {
      root = std::move(v);
      last_path_.clear();
      return &root;
    }
    Frame& top = stack_.back();
    if (top.node->is_array()) {
      last_path_ = top.path + "/" + std::to_string(top.node->size());
      top.node->push_back(std::move(v));
      return &top.node->back();
    }
    last_path_ = top.path + "/" + key_;
    (*top.node)[key_] = std::move(v);
    return &(*top.node)[key_];
  }

  bool fail(const std::string& msg) { throw ToricError(ErrorKind::ParseError, source_ + ": " + msg); }

  std::string_view text_;
  std::string source_;
  std::vector<Frame> stack_;
  std::string key_;
  std::string last_path_;
};

struct Document {
  Dom root;
  std::map<std::string, std::string> raw;
  std::string source;
};

Document parse_document(std::string_view text, const std::string& source) {
  RawNumberSax sax(text, source);
  nlohmann::json::sax_parse(text.begin(), text.end(), &sax);
  return Document{std::move(sax.root), std::move(sax.raw), source};
}

[[noreturn]] void schema(const Document& doc, const std::string& path, const std::string& msg) {
  throw ToricError(ErrorKind::SchemaViolation, doc.source + ": field '" + RawNumberSax::display(path) + "': " + msg);
}

void check_fields(const Document& doc, const Dom& obj, const std::string& path, const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!obj.is_object()) schema(doc, path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (!required.count(k) && !optional.count(k)) schema(doc, path + "/" + k, "unknown field");
  }
  for (const auto& k : required) {
    if (!obj.contains(k)) schema(doc, path + "/" + k, "missing required field");
  }
}

std::int64_t as_int(const Document& doc, const Dom& v, const std::string& path) {
  if (!v.is_number_integer()) schema(doc, path, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    schema(doc, path, "integer out of range");
  }
  return v.get<std::int64_t>();
}

double as_double(const Document& doc, const Dom& v, const std::string& path) {
  if (!v.is_number()) schema(doc, path, "expected a number");
  return v.get<double>();
}

const Dom& as_array(const Document& doc, const Dom& v, const std::string& path) {
  if (!v.is_array()) schema(doc, path, "expected an array");
  return v;
}

Rational as_rational(const Document& doc, const Dom& v, const std::string& path) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(as_int(doc, v, path));
    if (v.is_number_float()) return parse_rational(doc.raw.at(path));
  } catch (const ToricError& e) {
    schema(doc, path, e.what());
  }
  schema(doc, path, "expected a rational string or a number");
}

std::vector<double> double_list(const Document& doc, const Dom& v, const std::string& path) {
  std::vector<double> out;
  const Dom& arr = as_array(doc, v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_double(doc, arr[i], path + "/" + std::to_string(i)));
  return out;
}

RationalProfile profile_from(const Document& doc, const Dom& v, const std::string& path) {
  if (v.is_string()) {
    if (v.get<std::string>() == "calabi-blowup") return RationalProfile::calabi_blowup();
    schema(doc, path, "unknown profile name '" + v.get<std::string>() + "'");
  }
  check_fields(doc, v, path, {}, {"d2_rational", "poles"});
  if (v.size() != 1) schema(doc, path, "expected exactly one of d2_rational, poles");
  try {
    if (v.contains("d2_rational")) {
      const std::string p = path + "/d2_rational";
      const Dom& r = v["d2_rational"];
      check_fields(doc, r, p, {"numerator_coeffs", "denominator_coeffs"}, {"minus_terms"});
      std::vector<std::array<double, 2>> minus;
      if (r.contains("minus_terms")) {
        const Dom& terms = as_array(doc, r["minus_terms"], p + "/minus_terms");
        for (std::size_t i = 0; i < terms.size(); ++i) {
          const std::string tp = p + "/minus_terms/" + std::to_string(i);
          check_fields(doc, terms[i], tp, {"coeff", "shift"});
          minus.push_back({as_double(doc, terms[i]["coeff"], tp + "/coeff"), as_double(doc, terms[i]["shift"], tp + "/shift")});
        }
      }
      return RationalProfile::from_rational(double_list(doc, r["numerator_coeffs"], p + "/numerator_coeffs"),
                                            double_list(doc, r["denominator_coeffs"], p + "/denominator_coeffs"), minus);
    }
    const std::string p = path + "/poles";
    const Dom& arr = as_array(doc, v["poles"], p);
    std::vector<SimplePole> poles;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string tp = p + "/" + std::to_string(i);
      check_fields(doc, arr[i], tp, {"coeff", "pole"});
      poles.push_back({as_double(doc, arr[i]["coeff"], tp + "/coeff"), as_double(doc, arr[i]["pole"], tp + "/pole")});
    }
    return RationalProfile(std::move(poles));
  } catch (const ToricError& e) {
    if (e.kind() == ErrorKind::SchemaViolation) throw;
    schema(doc, path, e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ToricError(ErrorKind::ParseError, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DelzantPolytope parse_polytope(std::string_view text, const std::string& source) {
  const Document doc = parse_document(text, source);
  check_fields(doc, doc.root, "", {"dim", "facets"}, {"name"});
  const std::int64_t dim = as_int(doc, doc.root["dim"], "/dim");
  if (dim < 1) schema(doc, "/dim", "must be a positive integer");
  std::string name;
  if (doc.root.contains("name")) {
    if (!doc.root["name"].is_string()) schema(doc, "/name", "expected a string");
    name = doc.root["name"].get<std::string>();
  }
  const Dom& facets = as_array(doc, doc.root["facets"], "/facets");
  std::vector<Facet> out;
  for (std::size_t r = 0; r < facets.size(); ++r) {
    const std::string p = "/facets/" + std::to_string(r);
    check_fields(doc, facets[r], p, {"normal", "offset"});
    const Dom& normal = as_array(doc, facets[r]["normal"], p + "/normal");
    if (normal.size() != static_cast<std::size_t>(dim)) schema(doc, p + "/normal", "length must equal dim");
    Facet f;
    for (std::size_t i = 0; i < normal.size(); ++i) f.normal.push_back(as_int(doc, normal[i], p + "/normal/" + std::to_string(i)));
    f.offset = as_rational(doc, facets[r]["offset"], p + "/offset");
    out.push_back(std::move(f));
  }
  return build_polytope(static_cast<std::size_t>(dim), std::move(out), name);
}

DelzantPolytope load_polytope(const std::string& path) { return parse_polytope(read_file(path), path); }

CorrectionTerm parse_correction(std::string_view text, std::size_t dim, const std::string& source) {
  const Document doc = parse_document(text, source);
  const Dom& root = doc.root;
  if (!root.is_object() || !root.contains("kind") || !root["kind"].is_string()) schema(doc, "/kind", "expected a string");
  const std::string kind = root["kind"].get<std::string>();
  if (kind == "zero") {
    check_fields(doc, root, "", {"kind"});
    return CorrectionTerm::zero();
  }
  if (kind == "polynomial") {
    check_fields(doc, root, "", {"kind", "terms"});
    const Dom& terms = as_array(doc, root["terms"], "/terms");
    std::vector<Monomial> monos;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string p = "/terms/" + std::to_string(i);
      check_fields(doc, terms[i], p, {"exponents", "coeff"});
      const Dom& e = as_array(doc, terms[i]["exponents"], p + "/exponents");
      if (e.size() != dim) schema(doc, p + "/exponents", "length must equal the polytope dimension");
      Monomial m;
      for (std::size_t a = 0; a < e.size(); ++a) {
        const auto v = as_int(doc, e[a], p + "/exponents/" + std::to_string(a));
        if (v < 0 || v > 64) schema(doc, p + "/exponents/" + std::to_string(a), "exponent must be in [0, 64]");
        m.exponents.push_back(static_cast<int>(v));
      }
      m.coeff = as_double(doc, terms[i]["coeff"], p + "/coeff");
      monos.push_back(std::move(m));
    }
    return CorrectionTerm(Polynomial(dim, std::move(monos)));
  }
  if (kind == "ridge") {
    check_fields(doc, root, "", {"kind", "direction", "profile"}, {"scale", "profile_name"});
    const auto dir = double_list(doc, root["direction"], "/direction");
    if (dir.size() != dim) schema(doc, "/direction", "length must equal the polytope dimension");
    RidgeCorrection ridge;
    ridge.direction = Eigen::Map<const Eigen::VectorXd>(dir.data(), static_cast<Eigen::Index>(dir.size()));
    ridge.profile = profile_from(doc, root["profile"], "/profile");
    ridge.scale = root.contains("scale") ? as_double(doc, root["scale"], "/scale") : 1.0;
    return CorrectionTerm(std::move(ridge));
  }
  schema(doc, "/kind", "unknown correction kind '" + kind + "'");
}

CorrectionTerm load_correction(const std::string& path_or_name, std::size_t dim) {
  if (path_or_name == "zero") return CorrectionTerm::zero();
  if (path_or_name == "calabi-blowup") {
    if (dim != 2) throw ToricError(ErrorKind::InvalidArgument, "calabi-blowup is a correction on a 2-dimensional polytope");
    return CorrectionTerm::calabi_blowup();
  }
  return parse_correction(read_file(path_or_name), dim, path_or_name);
}

std::vector<Eigen::VectorXd> parse_points(std::string_view text, std::size_t dim, const std::string& source) {
  std::vector<Eigen::VectorXd> out;
  const auto first = std::find_if(text.begin(), text.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
  if (first != text.end() && *first == '[') {
    const Document doc = parse_document(text, source);
    const Dom& arr = as_array(doc, doc.root, "");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto v = double_list(doc, arr[i], "/" + std::to_string(i));
      if (v.size() != dim) schema(doc, "/" + std::to_string(i), "point length must equal the polytope dimension");
      out.emplace_back(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(dim)));
    }
    return out;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<double> v;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ToricError(ErrorKind::ParseError, source + ":" + std::to_string(lineno) + ": not a number: '" + tok + "'");
      }
    }
    if (v.empty()) continue;
    if (v.size() != dim) {
      throw ToricError(ErrorKind::ParseError, source + ":" + std::to_string(lineno) + ": expected " + std::to_string(dim) + " coordinates");
    }
    out.emplace_back(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(dim)));
  }
  return out;
}

std::vector<Eigen::VectorXd> load_points(const std::string& path, std::size_t dim) {
  return parse_points(read_file(path), dim, path);
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i).transpose()));
  return a;
}

Json rational_matrix_json(const RationalMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(to_string(q));
    a.push_back(r);
  }
  return a;
}

Json error_json(const ToricError& e) {
  Json j;
  j["kind"] = to_string(e.kind());
  j["message"] = e.what();
  if (e.index()) j["index"] = *e.index();
  return j;
}

Json polytope_json(const DelzantPolytope& p) {
  Json j;
  j["dim"] = p.dim();
  j["facets"] = Json::array();
  for (const auto& f : p.facets()) {
    Json fj;
    fj["normal"] = f.normal;
    fj["offset"] = to_string(f.offset);
    j["facets"].push_back(fj);
  }
  if (!p.name().empty()) j["name"] = p.name();
  return j;
}

Json correction_json(const CorrectionTerm& h) {
  Json j;
  j["kind"] = h.kind_name();
  if (const auto* poly = std::get_if<Polynomial>(&h.kind())) {
    j["terms"] = Json::array();
    for (const auto& m : poly->terms()) j["terms"].push_back({{"exponents", m.exponents}, {"coeff", m.coeff}});
  } else if (const auto* ridge = std::get_if<RidgeCorrection>(&h.kind())) {
    j["direction"] = vector_json(ridge->direction);
    Json poles = Json::array();
    for (const auto& pole : ridge->profile.poles()) poles.push_back({{"coeff", pole.coeff}, {"pole", pole.pole}});
    if (!ridge->profile.name().empty()) j["profile_name"] = ridge->profile.name();
    j["profile"] = {{"poles", poles}};
    j["scale"] = ridge->scale;
  }
  return j;
}

namespace {

Json optional_list(const std::vector<std::optional<std::int64_t>>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x ? Json(*x) : Json(nullptr));
  return a;
}

}  // namespace

Json combinatorics_json(const DelzantPolytope& p) {
  Json j;
  j["name"] = p.name();
  j["dim"] = p.dim();
  j["num_facets"] = p.num_facets();
  j["delzant"] = true;
  Json verts = Json::array();
  for (const auto& v : p.vertices()) {
    Json pt = Json::array();
    for (const auto& q : v.point) pt.push_back(to_string(q));
    verts.push_back({{"point", pt}, {"facets", v.facets}});
  }
  j["vertices"] = verts;
  const FVector f = f_vector(p);
  j["f_vector"] = optional_list(f.counts);
  const auto h = h_numbers(f);
  j["h_numbers"] = optional_list(h);
  if (std::all_of(h.begin(), h.end(), [](const auto& x) { return x.has_value(); })) {
    std::vector<std::int64_t> hv;
    for (const auto& x : h) hv.push_back(*x);
    const auto lef = check_hard_lefschetz(hv);
    j["hard_lefschetz"] = {{"symmetric", lef.symmetric}, {"unimodal_lower_half", lef.unimodal_lower_half}};
    j["h1_equals_d_minus_n"] = hv.size() > 1 && hv[1] == static_cast<std::int64_t>(p.num_facets() - p.dim());
  } else {
    j["hard_lefschetz"] = nullptr;
    j["h1_equals_d_minus_n"] = nullptr;
  }
  const IntVector sum = normal_sum(p);
  j["normal_sum"] = sum;
  j["normal_sum_zero"] = std::all_of(sum.begin(), sum.end(), [](std::int64_t v) { return v == 0; });
  return j;
}

Json validity_json(const ValidityReport& r) {
  Json j;
  j["valid"] = r.valid;
  j["certified"] = r.certified;
  j["interior_samples"] = r.interior_samples;
  j["min_hessian_eigenvalue"] = r.min_hessian_eigenvalue;
  j["positive_definite"] = r.positive_definite;
  j["correction_smooth"] = r.correction_smooth;
  j["boundary_ok"] = r.boundary_ok;
  j["product_min"] = r.product_min;
  j["product_max"] = r.product_max;
  Json seqs = Json::array();
  for (const auto& b : r.boundary) {
    Json s;
    s["target"] = b.target;
    s["approach_ell"] = b.approach_ell;
    s["products"] = b.products;
    if (!b.kernel_norms.empty()) s["kernel_norms"] = b.kernel_norms;
    s["extrapolated"] = b.extrapolated;
    s["bounded_positive"] = b.bounded_positive;
    s["kernel_vanishes"] = b.kernel_vanishes;
    seqs.push_back(s);
  }
  j["boundary"] = seqs;
  j["failures"] = r.failures;
  return j;
}

Json extremality_json(const ExtremalityReport& r) {
  Json j;
  j["fit"] = {{"constant", r.constant}, {"gradient", vector_json(r.gradient)}};
  j["residual_sup"] = r.residual_sup;
  j["samples"] = r.samples;
  j["tolerance"] = r.tolerance;
  j["is_extremal"] = r.is_extremal;
  return j;
}

Json spectrum_json(const SpectrumResult& r) {
  Json j;
  j["eigenvalues"] = r.eigenvalues;
  Json m;
  m["name"] = r.method;
  if (r.method == "ritz") {
    m["ritz_degree"] = r.ritz_degree;
  } else {
    m["fem_cells"] = r.fem_cells;
  }
  j["method"] = m;
  j["gram_condition"] = r.gram_condition;
  j["coarse_eigenvalues"] = r.coarse_eigenvalues;
  Json conv = Json::array();
  for (bool b : r.converged) conv.push_back(b);
  j["converged"] = conv;
  j["constant_mode"] = r.constant_mode;
  return j;
}

Json cohomology_json(const DelzantPolytope& p) {
  Json j;
  const H2Report h2 = h2_dimension(p);
  j["h2_dimension"] = h2.dim;
  j["kernel_basis"] = rational_matrix_json(h2.kernel_basis);
  const ClassVector c = symplectic_class(p);
  Json coeffs = Json::array();
  for (const auto& q : c.coefficients) coeffs.push_back(to_string(q));
  j["symplectic_class"] = coeffs;
  const IntVector sum = normal_sum(p);
  j["normal_sum"] = sum;
  j["normal_sum_zero"] = std::all_of(sum.begin(), sum.end(), [](std::int64_t v) { return v == 0; });
  return j;
}

Json report(const std::string& command, Json body) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

namespace {

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    const std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    const bool quote = v.find_first_of(",\"\n") != std::string::npos;
    out << path << ",";
    if (quote) {
      out << '"';
      for (char c : v) out << (c == '"' ? std::string("\"\"") : std::string(1, c));
      out << '"';
    } else {
      out << v;
    }
    out << "\n";
  }
}

}  // namespace

std::string flatten_csv(const Json& j) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(j, "", out);
  return out.str();
}

}  // namespace toric
