#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace nonloc {

struct CheckRecord {
    std::string name;
    /// Human-readable pointer to the claim being checked.
    std::string anchor;
    double measured = 0.0;
    double bound = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

/// A two-column (x, y) series for plotting.
struct PlotSeries {
    std::string name;
    std::string x_label;
    std::string y_label;
    std::vector<std::array<double, 2>> points;
};

class VerificationReport {
public:
    void add(CheckRecord record) { records_.push_back(std::move(record)); }
    void add_series(PlotSeries series) { series_.push_back(std::move(series)); }
    void set_meta(const std::string& key, const std::string& value) { metadata_[key] = value; }
    void set_timing(const std::string& key, double seconds) { timings_[key] = seconds; }
    /// Appends another report's records, series, metadata and timings.
    void merge(const VerificationReport& other);

    [[nodiscard]] const std::vector<CheckRecord>& records() const noexcept { return records_; }
    [[nodiscard]] const std::vector<PlotSeries>& series() const noexcept { return series_; }
    [[nodiscard]] const std::map<std::string, std::string>& metadata() const noexcept { return metadata_; }
    [[nodiscard]] const std::map<std::string, double>& timings() const noexcept { return timings_; }

    /// True iff every record passes.
    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::size_t failures() const;

private:
    std::vector<CheckRecord> records_;
    std::vector<PlotSeries> series_;
    std::map<std::string, std::string> metadata_;
    std::map<std::string, double> timings_;
};

/// JSON serialization; non-finite numbers are written as strings.
/// Timings go under their own key so they can be left out for comparison.
std::string to_json(const VerificationReport& report, bool with_timings = true);
VerificationReport report_from_json(const std::string& text);

/// CSV header: name,anchor,measured,bound,tolerance,pass
std::string format_csv(const VerificationReport& report);
/// One block per series: "# name" and "# x_label y_label" lines, then "x y"
/// rows, blocks separated by two blank lines.
std::string format_plotdata(const VerificationReport& report);

/// File variants; throw IoError with the path on failure.
void emit_json(const VerificationReport& report, const std::string& path, bool with_timings = true);
void emit_csv(const VerificationReport& report, const std::string& path);
void emit_plotdata(const VerificationReport& report, const std::string& path);

}  // namespace nonloc
