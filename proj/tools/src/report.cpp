#include "report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace photostat::cli {

Check within(std::string name, double value, double target, double tolerance) {
    return {std::move(name), value, target, tolerance, "within",
            std::abs(value - target) <= tolerance};
}

Check at_least(std::string name, double value, double bound) {
    return {std::move(name), value, bound, 0.0, "at_least", value >= bound};
}

Check at_most(std::string name, double value, double bound) {
    return {std::move(name), value, bound, 0.0, "at_most", value <= bound};
}

Json to_json(const Check& c) {
    Json j;
    j["name"] = c.name;
    j["value"] = c.value;
    j["target"] = c.target;
    j["tolerance"] = c.tolerance;
    j["relation"] = c.relation;
    j["pass"] = c.pass;
    return j;
}

std::size_t Report::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) {
        n += c.pass ? 0 : 1;
    }
    return n;
}

std::string num(double v) {
    return fmt::format("{}", v);
}

std::string num(std::uint64_t v) {
    return fmt::format("{}", v);
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << '\n';
    }
}

Table checks_table(const std::vector<Check>& checks) {
    Table t;
    t.columns = {"name", "value", "target", "tolerance", "relation", "pass"};
    for (const auto& c : checks) {
        t.rows.push_back({c.name, num(c.value), num(c.target), num(c.tolerance), c.relation,
                          c.pass ? "true" : "false"});
    }
    return t;
}

}  // namespace photostat::cli
