#include "npg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace npg {

namespace {

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  throw Error(std::string("instance file: unexpected end of input reading ") + what);
}

std::string expect_key(std::istream& in, const std::string& key) {
  const std::string line = next_line(in, key.c_str());
  const auto space = line.find(' ');
  const std::string head = line.substr(0, space);
  if (head != key) throw Error("instance file: expected '" + key + "', found '" + head + "'");
  return space == std::string::npos ? std::string() : line.substr(space + 1);
}

double parse_double(std::string_view token) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error("cannot parse number '" + std::string(token) + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(const std::string& token) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) throw Error("cannot parse integer '" + token + "'");
  return value;
}

Vector parse_row(const std::string& line, Index expected, const char* what) {
  Vector out(expected);
  std::istringstream tokens(line);
  std::string token;
  Index k = 0;
  while (tokens >> token) {
    if (k >= expected) throw Error(std::string("instance file: too many values in ") + what);
    out[k++] = parse_double(token);
  }
  if (k != expected) throw Error(std::string("instance file: too few values in ") + what);
  return out;
}

template <typename Row>
void write_row(std::ostream& out, const Row& row) {
  for (Index j = 0; j < row.size(); ++j) {
    if (j) out << ' ';
    out << format_double(row[j]);
  }
  out << '\n';
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_instance(std::ostream& out, const Instance& instance) {
  const Objective& obj = instance.objective;
  out << "npg-instance 1\n";
  out << "family " << to_string(instance.family) << '\n';
  out << "loss " << to_string(obj.loss()) << '\n';
  out << "set " << instance.set.name() << '\n';
  out << "m " << obj.rows() << '\n';
  out << "n " << obj.dim() << '\n';
  out << "s " << instance.s << '\n';
  out << "seed " << instance.seed << '\n';
  out << "ground_truth " << (instance.ground_truth ? 1 : 0) << '\n';
  out << "A\n";
  for (Index i = 0; i < obj.rows(); ++i) write_row(out, obj.matrix().row(i));
  out << "b\n";
  write_row(out, obj.rhs());
  out << "x0\n";
  write_row(out, instance.x0);
  if (instance.ground_truth) {
    out << "truth\n";
    write_row(out, *instance.ground_truth);
  }
}

Instance read_instance(std::istream& in) {
  if (expect_key(in, "npg-instance") != "1") throw Error("instance file: unsupported version");
  const Family family = parse_family(expect_key(in, "family"));
  const Loss loss = parse_loss(expect_key(in, "loss"));
  const SymmetricSet set = SymmetricSet::parse(expect_key(in, "set"));
  const auto m = parse_int<Index>(expect_key(in, "m"));
  const auto n = parse_int<Index>(expect_key(in, "n"));
  const auto s = parse_int<Index>(expect_key(in, "s"));
  const auto seed = parse_int<std::uint64_t>(expect_key(in, "seed"));
  const bool has_truth = parse_int<int>(expect_key(in, "ground_truth")) != 0;
  if (m < 1 || n < 1) throw Error("instance file: m and n must be positive");

  expect_key(in, "A");
  Matrix a(m, n);
  for (Index i = 0; i < m; ++i) a.row(i) = parse_row(next_line(in, "A"), n, "A").transpose();
  expect_key(in, "b");
  Vector b = parse_row(next_line(in, "b"), m, "b");
  expect_key(in, "x0");
  Vector x0 = parse_row(next_line(in, "x0"), n, "x0");
  std::optional<Vector> truth;
  if (has_truth) {
    expect_key(in, "truth");
    truth = parse_row(next_line(in, "truth"), n, "truth");
  }
  Objective obj = loss == Loss::kLeastSquares ? Objective::least_squares(std::move(a), std::move(b))
                                              : Objective::logistic(std::move(a), std::move(b));
  return Instance{family, std::move(obj), set, s, std::move(x0), std::move(truth), seed};
}

void save_instance(const std::string& path, const Instance& instance) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_instance(out, instance);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_instance(in);
}

void write_point(std::ostream& out, const Vector& x) {
  for (Index i = 0; i < x.size(); ++i) out << format_double(x[i]) << '\n';
}

Vector read_point(std::istream& in) {
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    values.push_back(parse_double(line));
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

void save_point(const std::string& path, const Vector& x) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_point(out, x);
}

Vector load_point(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_point(in);
}

nlohmann::json to_json(const StationarityReport& report) {
  nlohmann::json j{{"general", report.general},
                   {"strong", report.strong},
                   {"coordinatewise", report.coordinatewise},
                   {"coordinatewise_exhaustive", report.coordinatewise_exhaustive},
                   {"worst_violation", report.worst_violation},
                   {"objective", report.objective}};
  if (report.witness) {
    j["witness"] = std::vector<double>(report.witness->data(), report.witness->data() + report.witness->size());
    j["witness_objective"] = report.witness_objective;
    j["witness_stepsize"] = report.witness_stepsize;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const IterationRecord& record) {
  return {{"k", record.k},
          {"step_kind", to_string(record.kind)},
          {"f_value", record.f_value},
          {"stepsize_used", record.stepsize},
          {"support", record.support},
          {"backtrack_count", record.backtrack_count}};
}

nlohmann::json to_json(const IterateTrace& trace) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : trace.records) records.push_back(to_json(r));
  nlohmann::json j{{"records", std::move(records)},
                   {"x_final", std::vector<double>(trace.x_final.data(), trace.x_final.data() + trace.x_final.size())},
                   {"f_initial", trace.f_initial},
                   {"f_final", trace.f_final},
                   {"iterations", trace.iterations},
                   {"converged", trace.converged},
                   {"wall_time_seconds", trace.wall_time_seconds}};
  j["certificate"] = trace.certificate ? to_json(*trace.certificate) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const BenchRow& row, bool with_time) {
  nlohmann::json j{{"family", to_string(row.family)},
                   {"m", row.m},
                   {"n", row.n},
                   {"s", row.s},
                   {"method", to_string(row.method)},
                   {"seed", row.seed},
                   {"cardinality", row.cardinality},
                   {"objective", row.objective},
                   {"time_s", with_time ? nlohmann::json(row.time_s) : nlohmann::json(nullptr)},
                   {"strong_stationary", row.strong_stationary},
                   {"violation", row.violation}};
  if (!row.error.empty()) j["error"] = row.error;
  return j;
}

nlohmann::json to_json(const BenchSummary& summary, bool with_time) {
  auto number = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json j = {{"family", to_string(summary.family)},
                      {"m", summary.m},
                      {"n", summary.n},
                      {"s", summary.s},
                      {"method", to_string(summary.method)},
                      {"runs", summary.runs},
                      {"median_cardinality", number(summary.median_cardinality)},
                      {"median_objective", number(summary.median_objective)},
                      {"strong_stationary", summary.strong_stationary}};
  j["median_time_s"] = with_time ? number(summary.median_time_s) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const BenchReport& report, bool with_time) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) rows.push_back(to_json(row, with_time));
  nlohmann::json summaries = nlohmann::json::array();
  for (const auto& s : report.summaries) summaries.push_back(to_json(s, with_time));
  return {{"rows", std::move(rows)}, {"summaries", std::move(summaries)}};
}

void write_csv(std::ostream& out, const BenchReport& report, bool with_time) {
  out << "family,m,n,s,method,seed,cardinality,objective,time_s,strong_stationary,violation\n";
  for (const auto& row : report.rows) {
    out << to_string(row.family) << ',' << row.m << ',' << row.n << ',' << row.s << ',' << to_string(row.method)
        << ',' << row.seed << ',';
    if (!row.error.empty()) {
      // failed rows keep the identifying columns and leave the results empty
      out << ",,,,\n";
      continue;
    }
    out << row.cardinality << ',' << format_double(row.objective) << ',';
    if (with_time) out << format_double(row.time_s);
    out << ',' << (row.strong_stationary ? "true" : "false") << ',' << format_double(row.violation) << '\n';
  }
}

}  // namespace npg
