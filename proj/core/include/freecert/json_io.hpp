#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "freecert/certs.hpp"
#include "freecert/config.hpp"
#include "freecert/domain.hpp"
#include "freecert/pencil.hpp"
#include "freecert/poly.hpp"
#include "freecert/series.hpp"
#include "freecert/tuple.hpp"

namespace freecert {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Matrix schema: an array of rows; every entry is either a plain number
/// (real) or a two-element [re, im] array.  Writers always emit [re, im]
/// pairs; hand-written inputs may use bare numbers.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

/// Words serialize as arrays of signed letters: +j is x_j, -j is x_j*.
Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

Json poly_to_json(const FreePoly& p);
FreePoly poly_from_json(const Json& j);

Json pencil_to_json(const LinearPencil& l);
LinearPencil pencil_from_json(const Json& j);

Json tuple_to_json(const MatrixTuple& x);
MatrixTuple tuple_from_json(const Json& j, int max_size = 256);

Json domain_to_json(const Domain& d);
Domain domain_from_json(const Json& j);

Json series_to_json(const PowerSeries& s);
PowerSeries series_from_json(const Json& j);

Json kraus_cert_to_json(const KrausCertificate& c);
std::vector<Mat> kraus_from_json(const Json& j);

Json psatz_cert_to_json(const PsatzCertificate& c, double residual);
PsatzCertificate psatz_cert_from_json(const Json& j);

Json farkas_to_json(const FarkasCertificate& c);

Json tolerances_to_json(const Tolerances& t);

/// {schema_version, seed, tolerances}; the stem every CLI report starts from.
Json report_header(const RunConfig& cfg);

Json load_json_file(const std::string& path);
void save_json_file(const Json& j, const std::string& path);

}  // namespace freecert
