#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace photostat::cli {

using Json = nlohmann::ordered_json;

/// One named assertion. `relation` is "within" (|value - target| <= tolerance),
/// "at_least" (value >= target) or "at_most" (value <= target).
struct Check {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    std::string relation = "within";
    bool pass = false;
};

Check within(std::string name, double value, double target, double tolerance);
Check at_least(std::string name, double value, double bound);
Check at_most(std::string name, double value, double bound);
Json to_json(const Check& c);

/// Rows of already-formatted cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    Json data = Json::object();
    Table table;
    std::vector<Check> checks;

    std::size_t failures() const;
};

/// Shortest round-trip decimal form; independent of locale.
std::string num(double v);
std::string num(std::uint64_t v);

void write_csv(std::ostream& out, const Table& table);
/// Checks as a table with columns name,value,target,tolerance,relation,pass.
Table checks_table(const std::vector<Check>& checks);

}  // namespace photostat::cli
