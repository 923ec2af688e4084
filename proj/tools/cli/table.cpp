#include "table.hpp"

#include "params.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace cvq::cli {

namespace {

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string text_of(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_number(*d);
    return std::get<std::string>(c);
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& out, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << quote(t.columns[i]);
    out << "\r\n";
    for (const Row& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << quote(text_of(r[i]));
        out << "\r\n";
    }
}

Table parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            record.push_back(field);
            field.clear();
            any = true;
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            record.push_back(field);
            records.push_back(record);
            record.clear();
            field.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (quoted) throw usage_error("csv: unterminated quoted field");
    if (any || !field.empty()) {
        record.push_back(field);
        records.push_back(record);
    }
    Table t;
    if (records.empty()) return t;
    t.columns = records.front();
    for (std::size_t r = 1; r < records.size(); ++r) {
        Row row;
        for (const std::string& f : records[r]) {
            if (f == "nan") {
                row.emplace_back(std::nan(""));
                continue;
            }
            try {
                row.emplace_back(parse_number(f));
            } catch (const usage_error&) {
                row.emplace_back(f);
            }
        }
        t.rows.push_back(row);
    }
    return t;
}

nlohmann::json to_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const Row& r : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (const double* d = std::get_if<double>(&r[i]))
                obj[t.columns[i]] = std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json(nullptr);
            else
                obj[t.columns[i]] = std::get<std::string>(r[i]);
        }
        rows.push_back(obj);
    }
    return {{"columns", t.columns}, {"rows", rows}};
}

}  // namespace cvq::cli
