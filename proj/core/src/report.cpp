#include "nonloc/report.hpp"

#include "nonloc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace nonloc {

namespace {

using nlohmann::json;

json number(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    if (std::isnan(v)) {
        return "nan";
    }
    return v > 0 ? "inf" : "-inf";
}

double read_number(const json& j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    const auto s = j.get<std::string>();
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    throw InvalidArgument("report: bad number '" + s + "'");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(path, "cannot open for writing");
    }
    out << content;
    out.close();
    if (!out) {
        throw IoError(path, "write failed");
    }
}

}  // namespace

void VerificationReport::merge(const VerificationReport& other) {
    records_.insert(records_.end(), other.records_.begin(), other.records_.end());
    series_.insert(series_.end(), other.series_.begin(), other.series_.end());
    for (const auto& [k, v] : other.metadata_) {
        metadata_[k] = v;
    }
    for (const auto& [k, v] : other.timings_) {
        timings_[k] = v;
    }
}

bool VerificationReport::passed() const {
    return failures() == 0;
}

std::size_t VerificationReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(records_.begin(), records_.end(), [](const CheckRecord& r) { return !r.pass; }));
}

std::string to_json(const VerificationReport& report, bool with_timings) {
    json j;
    j["pass"] = report.passed();
    j["metadata"] = report.metadata();
    json records = json::array();
    for (const auto& r : report.records()) {
        records.push_back({{"name", r.name},
                           {"anchor", r.anchor},
                           {"measured", number(r.measured)},
                           {"bound", number(r.bound)},
                           {"tolerance", number(r.tolerance)},
                           {"pass", r.pass},
                           {"detail", r.detail}});
    }
    j["records"] = records;
    json series = json::array();
    for (const auto& s : report.series()) {
        json pts = json::array();
        for (const auto& p : s.points) {
            pts.push_back({number(p[0]), number(p[1])});
        }
        series.push_back({{"name", s.name}, {"x_label", s.x_label}, {"y_label", s.y_label}, {"points", pts}});
    }
    j["series"] = series;
    if (with_timings) {
        j["timings"] = report.timings();
    }
    return j.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("report: ") + e.what());
    }
    VerificationReport out;
    try {
        for (const auto& [k, v] : j.at("metadata").items()) {
            out.set_meta(k, v.get<std::string>());
        }
        for (const auto& r : j.at("records")) {
            out.add({r.at("name").get<std::string>(), r.at("anchor").get<std::string>(), read_number(r.at("measured")),
                     read_number(r.at("bound")), read_number(r.at("tolerance")), r.at("pass").get<bool>(),
                     r.value("detail", std::string())});
        }
        for (const auto& s : j.at("series")) {
            PlotSeries ps{s.at("name").get<std::string>(), s.at("x_label").get<std::string>(),
                          s.at("y_label").get<std::string>(), {}};
            for (const auto& p : s.at("points")) {
                ps.points.push_back({read_number(p.at(0)), read_number(p.at(1))});
            }
            out.add_series(std::move(ps));
        }
        if (j.contains("timings")) {
            for (const auto& [k, v] : j.at("timings").items()) {
                out.set_timing(k, v.get<double>());
            }
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("report: ") + e.what());
    }
    return out;
}

std::string format_csv(const VerificationReport& report) {
    std::string out = "name,anchor,measured,bound,tolerance,pass\n";
    for (const auto& r : report.records()) {
        out += csv_field(r.name) + ',' + csv_field(r.anchor) + ',' + fmt(r.measured) + ',' + fmt(r.bound) + ',' +
               fmt(r.tolerance) + ',' + (r.pass ? "true" : "false") + '\n';
    }
    return out;
}

std::string format_plotdata(const VerificationReport& report) {
    std::string out;
    bool first = true;
    for (const auto& s : report.series()) {
        if (!first) {
            out += "\n\n";
        }
        first = false;
        out += "# " + s.name + "\n# " + s.x_label + ' ' + s.y_label + '\n';
        for (const auto& p : s.points) {
            out += fmt(p[0]) + ' ' + fmt(p[1]) + '\n';
        }
    }
    return out;
}

void emit_json(const VerificationReport& report, const std::string& path, bool with_timings) {
    write_file(path, to_json(report, with_timings));
}

void emit_csv(const VerificationReport& report, const std::string& path) {
    write_file(path, format_csv(report));
}

void emit_plotdata(const VerificationReport& report, const std::string& path) {
    write_file(path, format_plotdata(report));
}

}  // namespace nonloc
