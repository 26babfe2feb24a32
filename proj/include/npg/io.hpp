#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "npg/bench.hpp"
#include "npg/solvers.hpp"
#include "npg/stationarity.hpp"

namespace npg {

// Instance file (text, one token group per line):
//
//   npg-instance 1
//   family <cs-least-squares|logistic|simplex-least-squares>
//   loss <least-squares|logistic>
//   set <set name>
//   m <rows>
//   n <cols>
//   s <sparsity>
//   seed <u64>
//   ground_truth <0|1>
//   A
//   <m lines, n values each, row-major>
//   b
//   <one line, m values>
//   x0
//   <one line, n values>
//   [truth
//    <one line, n values>]
//
// Values are written in shortest round-trip form, so a write/read cycle is exact.
void write_instance(std::ostream& out, const Instance& instance);
Instance read_instance(std::istream& in);
void save_instance(const std::string& path, const Instance& instance);
Instance load_instance(const std::string& path);

/// Point files hold one value per line.
void write_point(std::ostream& out, const Vector& x);
Vector read_point(std::istream& in);
void save_point(const std::string& path, const Vector& x);
Vector load_point(const std::string& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

nlohmann::json to_json(const StationarityReport& report);
nlohmann::json to_json(const IterationRecord& record);
nlohmann::json to_json(const IterateTrace& trace);
nlohmann::json to_json(const BenchRow& row, bool with_time = true);
nlohmann::json to_json(const BenchSummary& summary, bool with_time = true);
nlohmann::json to_json(const BenchReport& report, bool with_time = true);

/// Columns: family,m,n,s,method,seed,cardinality,objective,time_s,strong_stationary,violation.
/// With `with_time` false the time column is left empty so output is reproducible.
void write_csv(std::ostream& out, const BenchReport& report, bool with_time = true);

}  // namespace npg
