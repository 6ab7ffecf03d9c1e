#pragma once

// JSON forms of the public types and the text formats read from the command
// line. Rationals and integers are strings, complex numbers [re, im], angles
// radians.

#include "gkz/connection.hpp"

#include <json.hpp>

namespace gkz {

using json = nlohmann::ordered_json;

json to_json(const Rational& x);
json to_json(const Integer& x);
json to_json(cplx x);
json to_json(const IntVector& v);
json to_json(const RatVector& v);
json to_json(const RatRowVector& v);
json to_json(const IntMatrix& m);
json to_json(const Eigen::VectorXd& v);
json to_json(const Eigen::VectorXcd& v);
json to_json(const Configuration& A);
json to_json(const Subdivision& S);
json to_json(const Circuit& c);
json to_json(const CtildeInequality& g);
json to_json(const Modification& m);
json to_json(const Facet& f);
json to_json(const GammaSeriesSpec& s);
json to_json(const GaussianRational& x);
json to_json(const CharacterSum& s);
json to_json(const CharFraction& f);
json to_json(const CharMatrix& m);
json to_json(const LogPoint& z);
json to_json(const SectorWindow& w);
json to_json(const PathSpec& p);
json to_json(const ConnectionMatrix& cm);
json to_json(const RowReport& r);
json to_json(const VerifyReport& r);
json to_json(const MBValue& v);
json to_json(const Quadrature& q);

template <class T>
T from_json(const json& j);

template <> Rational from_json<Rational>(const json& j);
template <> Integer from_json<Integer>(const json& j);
template <> cplx from_json<cplx>(const json& j);
template <> IntVector from_json<IntVector>(const json& j);
template <> RatVector from_json<RatVector>(const json& j);
template <> RatRowVector from_json<RatRowVector>(const json& j);
template <> IntMatrix from_json<IntMatrix>(const json& j);
template <> Eigen::VectorXd from_json<Eigen::VectorXd>(const json& j);
template <> Eigen::VectorXcd from_json<Eigen::VectorXcd>(const json& j);
template <> Configuration from_json<Configuration>(const json& j);
template <> Subdivision from_json<Subdivision>(const json& j);
template <> Circuit from_json<Circuit>(const json& j);
template <> CtildeInequality from_json<CtildeInequality>(const json& j);
template <> Modification from_json<Modification>(const json& j);
template <> Facet from_json<Facet>(const json& j);
template <> GammaSeriesSpec from_json<GammaSeriesSpec>(const json& j);
template <> GaussianRational from_json<GaussianRational>(const json& j);
template <> CharacterSum from_json<CharacterSum>(const json& j);
template <> CharFraction from_json<CharFraction>(const json& j);
template <> CharMatrix from_json<CharMatrix>(const json& j);
template <> LogPoint from_json<LogPoint>(const json& j);
template <> SectorWindow from_json<SectorWindow>(const json& j);
template <> PathSpec from_json<PathSpec>(const json& j);
template <> ConnectionMatrix from_json<ConnectionMatrix>(const json& j);
template <> RowReport from_json<RowReport>(const json& j);
template <> VerifyReport from_json<VerifyReport>(const json& j);
template <> MBValue from_json<MBValue>(const json& j);
template <> Quadrature from_json<Quadrature>(const json& j);

// Everything a run depends on; a run is reproducible from the matrix and this.
struct RunConfig {
  std::string command;
  std::string matrix;  // path
  std::optional<RatVector> weight;
  std::optional<std::vector<IndexSet>> from, to;
  std::optional<RatVector> fromWeight, toWeight;
  int order = 40;
  double tol = 1e-6;
  double target = 0.25;
  Quadrature quad;
  std::optional<Eigen::VectorXd> args;
  std::optional<Rational> r;
  std::optional<Eigen::VectorXcd> c;
  std::optional<Eigen::VectorXd> absz;  // |z|, for mb
  std::optional<IndexSet> cell;
  std::optional<int> j0;
  std::optional<IntVector> ktilde;
  int maxNodes = 1000;
  long budget = 0;
  std::uint64_t seed = 1;
  std::string out;
  bool pretty = false;

};

bool operator==(const RunConfig& a, const RunConfig& b);

json to_json(const RunConfig& c);
template <> RunConfig from_json<RunConfig>(const json& j);

// "1/2, 0, -3" and similar; whitespace or commas separate.
RatVector parse_rational_list(std::string_view text);
Eigen::VectorXd parse_real_list(std::string_view text);
// "0.31, 0.27+0.1i, -0.43, 2i"
Eigen::VectorXcd parse_complex_list(std::string_view text);
IndexSet parse_labels(std::string_view text, int N);
// Cells separated by ';'. Inside a cell labels are separated by ',' or spaces;
// a run of digits with no separator is read one label per digit when N < 10.
std::vector<IndexSet> parse_cells(std::string_view text, int N);
// Rows of whitespace-separated integers, or JSON: [[...]] or {"matrix": [[...]]}.
Configuration parse_matrix(std::string_view text);
Configuration read_matrix(const std::string& path);

// Generic parameters derived from a seed: small rationals off the integers
// plus a small imaginary part.
Eigen::VectorXcd default_parameters(int n, std::uint64_t seed);

}  // namespace gkz
