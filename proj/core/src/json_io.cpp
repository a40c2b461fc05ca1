#include "freecert/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace freecert {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("json: " + what);
}

Complex entry_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  fail("matrix entry must be a number or an [re, im] pair");
}

Json entry_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(entry_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j) {
  if (j.is_number()) {
    Mat m(1, 1);
    m(0, 0) = j.get<double>();
    return m;
  }
  if (!j.is_array() || j.empty()) fail("matrix must be a nonempty array of rows");
  if (!j[0].is_array()) fail("matrix rows must be arrays");
  const size_t cols = j[0].size();
  if (cols == 0) fail("matrix rows must be nonempty");
  Mat m(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      fail("matrix rows must all have the same length");
    for (size_t c = 0; c < cols; ++c) m(r, c) = entry_from_json(j[r][c]);
  }
  return m;
}

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(entry_to_json(v[i]));
  return a;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) fail("vector must be an array");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = entry_from_json(j[i]);
  return v;
}

Json word_to_json(const Word& w) {
  Json a = Json::array();
  for (int v : w.letters()) a.push_back(v);
  return a;
}

Word word_from_json(const Json& j) {
  if (!j.is_array()) fail("word must be an array of signed letters");
  std::vector<int> letters;
  for (const Json& e : j) {
    if (!e.is_number_integer()) fail("word letters must be integers");
    letters.push_back(e.get<int>());
  }
  try {
    return Word(std::move(letters));
  } catch (const std::exception& e) {
    fail(e.what());
  }
}

Json poly_to_json(const FreePoly& p) {
  Json terms = Json::array();
  for (const auto& [w, c] : p.terms())
    terms.push_back({{"word", word_to_json(w)}, {"coeff", mat_to_json(c)}});
  return Json{{"g", p.num_vars()},
              {"rows", p.rows()},
              {"cols", p.cols()},
              {"terms", std::move(terms)}};
}

FreePoly poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("terms"))
    fail("polynomial needs fields g and terms");
  int g = j.at("g").get<int>();
  int rows = j.value("rows", 1);
  int cols = j.value("cols", 1);
  FreePoly p(g, rows, cols);
  for (const Json& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("word") || !t.contains("coeff"))
      fail("polynomial term needs word and coeff");
    try {
      p.add_term(word_from_json(t.at("word")), mat_from_json(t.at("coeff")));
    } catch (const std::exception& e) {
      fail(std::string("bad polynomial term: ") + e.what());
    }
  }
  return p;
}

Json pencil_to_json(const LinearPencil& l) {
  Json mats = Json::array();
  for (const Mat& a : l.coeffs()) mats.push_back(mat_to_json(a));
  return Json{{"form", pencil_form_name(l.form())},
              {"g", l.num_vars()},
              {"d", l.dim()},
              {"A", std::move(mats)}};
}

LinearPencil pencil_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("form") || !j.contains("A"))
    fail("pencil needs fields form and A");
  std::vector<Mat> coeffs;
  for (const Json& m : j.at("A")) coeffs.push_back(mat_from_json(m));
  const std::string form = j.at("form").get<std::string>();
  try {
    LinearPencil l;
    if (form == "monic")
      l = LinearPencil::monic(std::move(coeffs));
    else if (form == "hermitian")
      l = LinearPencil::hermitian_form(std::move(coeffs));
    else if (form == "homogeneous")
      l = LinearPencil::homogeneous(std::move(coeffs));
    else
      fail("unknown pencil form: " + form);
    if (j.contains("g") && j.at("g").get<int>() != l.num_vars())
      fail("pencil g does not match coefficient count");
    if (j.contains("d") && j.at("d").get<int>() != l.dim())
      fail("pencil d does not match coefficient size");
    return l;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string("bad pencil: ") + e.what());
  }
}

Json tuple_to_json(const MatrixTuple& x) {
  Json mats = Json::array();
  for (const Mat& m : x.mats()) mats.push_back(mat_to_json(m));
  return Json{{"g", x.arity()}, {"n", x.dim()}, {"X", std::move(mats)}};
}

MatrixTuple tuple_from_json(const Json& j, int max_size) {
  if (!j.is_object() || !j.contains("X")) fail("tuple needs field X");
  std::vector<Mat> mats;
  for (const Json& m : j.at("X")) mats.push_back(mat_from_json(m));
  try {
    MatrixTuple x(std::move(mats));
    if (j.contains("g") && j.at("g").get<int>() != x.arity())
      fail("tuple g does not match matrix count");
    if (j.contains("n") && j.at("n").get<int>() != x.dim())
      fail("tuple n does not match matrix size");
    if (x.dim() > max_size)
      fail("tuple size exceeds the configured cap of " +
           std::to_string(max_size));
    return x;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string("bad tuple: ") + e.what());
  }
}

Json domain_to_json(const Domain& d) {
  if (const auto* ball = std::get_if<EpsNeighborhood>(&d))
    return Json{{"kind", "ball"}, {"g", ball->num_vars}, {"eps", ball->radius}};
  if (const auto* lmi = std::get_if<LmiDomain>(&d))
    return Json{{"kind", "lmi"}, {"pencil", pencil_to_json(lmi->pencil)}};
  const auto& semi = std::get<SemialgDomain>(d);
  return Json{{"kind", "semialg"},
              {"p", poly_to_json(semi.p)},
              {"segment_samples", semi.segment_samples}};
}

Domain domain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) fail("domain needs field kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ball") {
    if (!j.contains("g") || !j.contains("eps"))
      fail("ball domain needs g and eps");
    EpsNeighborhood b{j.at("g").get<int>(), j.at("eps").get<double>()};
    if (b.num_vars <= 0 || b.radius <= 0.0) fail("ball domain parameters");
    return b;
  }
  if (kind == "lmi") {
    if (!j.contains("pencil")) fail("lmi domain needs a pencil");
    return LmiDomain{pencil_from_json(j.at("pencil"))};
  }
  if (kind == "semialg") {
    if (!j.contains("p")) fail("semialgebraic domain needs p");
    SemialgDomain s{poly_from_json(j.at("p")),
                    j.value("segment_samples", 64)};
    return s;
  }
  fail("unknown domain kind: " + kind);
}

Json series_to_json(const PowerSeries& s) {
  Json coeffs = Json::array();
  for (const auto& [w, f] : s.coeffs)
    coeffs.push_back({{"word", word_to_json(w)}, {"F", vec_to_json(f)}});
  Json out{{"g", s.in_vars},
           {"gt", s.out_vars},
           {"ell", s.max_len},
           {"coeffs", std::move(coeffs)}};
  if (s.bound) out["bound"] = Json{{"C", s.bound->c}, {"eps", s.bound->eps}};
  return out;
}

PowerSeries series_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("gt") ||
      !j.contains("ell"))
    fail("series needs fields g, gt, ell");
  PowerSeries s;
  s.in_vars = j.at("g").get<int>();
  s.out_vars = j.at("gt").get<int>();
  s.max_len = j.at("ell").get<int>();
  if (s.in_vars <= 0 || s.out_vars <= 0 || s.max_len < 0)
    fail("series dimensions out of range");
  for (const Json& t : j.value("coeffs", Json::array())) {
    if (!t.contains("word") || !t.contains("F"))
      fail("series coefficient needs word and F");
    try {
      s.set_coeff(word_from_json(t.at("word")), vec_from_json(t.at("F")));
    } catch (const std::exception& e) {
      fail(std::string("bad series coefficient: ") + e.what());
    }
  }
  if (j.contains("bound")) {
    const Json& b = j.at("bound");
    try {
      s.attach_bound(b.at("C").get<double>(), b.at("eps").get<double>());
    } catch (const std::exception& e) {
      fail(std::string("bad series bound: ") + e.what());
    }
  }
  return s;
}

Json kraus_cert_to_json(const KrausCertificate& c) {
  Json v = Json::array();
  for (const Mat& m : c.v) v.push_back(mat_to_json(m));
  return Json{{"kind", "domination"},
              {"V", std::move(v)},
              {"choi", mat_to_json(c.choi)},
              {"residual", c.residual},
              {"truncation", c.truncation}};
}

std::vector<Mat> kraus_from_json(const Json& j) {
  const Json& v = j.is_object() && j.contains("V") ? j.at("V") : j;
  if (!v.is_array() || v.empty()) fail("Kraus certificate needs V matrices");
  std::vector<Mat> out;
  for (const Json& m : v) out.push_back(mat_from_json(m));
  return out;
}

Json psatz_cert_to_json(const PsatzCertificate& c, double residual) {
  Json s = Json::array();
  for (const FreePoly& p : c.s) s.push_back(poly_to_json(p));
  Json f = Json::array();
  for (const auto& vec : c.f) {
    Json entry = Json::array();
    for (const FreePoly& p : vec) entry.push_back(poly_to_json(p));
    f.push_back(std::move(entry));
  }
  return Json{{"kind", "psatz"},
              {"degree_cap", c.degree_cap},
              {"s", std::move(s)},
              {"f", std::move(f)},
              {"residual", residual}};
}

PsatzCertificate psatz_cert_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("s") || !j.contains("f"))
    fail("psatz certificate needs s and f");
  PsatzCertificate c;
  c.degree_cap = j.value("degree_cap", 0);
  for (const Json& p : j.at("s")) c.s.push_back(poly_from_json(p));
  for (const Json& vec : j.at("f")) {
    std::vector<FreePoly> entry;
    for (const Json& p : vec) entry.push_back(poly_from_json(p));
    c.f.push_back(std::move(entry));
  }
  return c;
}

Json farkas_to_json(const FarkasCertificate& c) {
  Json y = Json::array();
  for (int i = 0; i < c.y.size(); ++i) y.push_back(c.y[i]);
  return Json{{"y", std::move(y)},
              {"delta", c.delta},
              {"b_dot_y", c.b_dot_y}};
}

Json tolerances_to_json(const Tolerances& t) {
  return Json{{"domain_boundary", t.domain_boundary},
              {"unitarity", t.unitarity},
              {"checker_pass", t.checker_pass},
              {"dilation", t.dilation},
              {"sdp_feas_margin", t.sdp_feas_margin},
              {"sdp_eig_floor", t.sdp_eig_floor},
              {"sdp_constraint", t.sdp_constraint},
              {"cert_residual", t.cert_residual},
              {"kraus_truncation", t.kraus_truncation}};
}

Json report_header(const RunConfig& cfg) {
  return Json{{"schema_version", kSchemaVersion},
              {"seed", cfg.effective_seed()},
              {"tolerances", tolerances_to_json(cfg.tol)}};
}

Json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail("cannot open " + path);
  try {
    return Json::parse(is);
  } catch (const Json::parse_error& e) {
    fail("parse error in " + path + ": " + e.what());
  }
}

void save_json_file(const Json& j, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail("cannot write " + path);
  os << j.dump(2) << "\n";
}

}  // namespace freecert
