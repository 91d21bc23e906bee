#include "bcddo/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bcddo {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_real(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !t.empty();
}

}  // namespace

Dataset load_csv(const std::string& path, const LabelColumn& label_column, bool has_header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw DataError(path + ": file is empty");

    std::size_t row = 0;
    std::vector<std::string> header;
    if (has_header) {
        header = split_line(lines[0]);
        for (auto& h : header) h = trim(h);
        row = 1;
    } else {
        header.resize(split_line(lines[0]).size());
    }
    const std::size_t width = header.size();

    std::size_t label_idx;
    if (std::holds_alternative<std::size_t>(label_column)) {
        label_idx = std::get<std::size_t>(label_column);
        if (label_idx >= width)
            throw DataError(path + ": label column index " + std::to_string(label_idx) +
                            " out of range for " + std::to_string(width) + " columns");
    } else {
        const std::string& name = std::get<std::string>(label_column);
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw DataError(path + ": label column '" + name + "' not found in header");
        label_idx = static_cast<std::size_t>(it - header.begin());
    }

    Dataset ds;
    for (std::size_t c = 0; c < width; ++c) {
        if (c == label_idx) continue;
        ds.feature_names.push_back(has_header ? header[c] : "f" + std::to_string(c));
    }

    std::map<std::string, int> class_ids;  // first-appearance order kept via class_names
    for (; row < lines.size(); ++row) {
        const auto cells = split_line(lines[row]);
        if (cells.size() != width)
            throw DataError(path + ": row " + std::to_string(row + 1) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(width));
        std::vector<double> features;
        features.reserve(width - 1);
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_idx) continue;
            double v;
            if (!parse_real(cells[c], v))
                throw DataError(path + ": row " + std::to_string(row + 1) + ", column " +
                                std::to_string(c + 1) + ": non-numeric feature cell '" +
                                trim(cells[c]) + "'");
            features.push_back(v);
        }
        const std::string label = trim(cells[label_idx]);
        auto it = class_ids.find(label);
        if (it == class_ids.end()) {
            it = class_ids.emplace(label, static_cast<int>(ds.class_names.size())).first;
            ds.class_names.push_back(label);
        }
        ds.features.push_back(std::move(features));
        ds.labels.push_back(it->second);
    }
    if (ds.features.empty()) throw DataError(path + ": no data rows");
    return ds;
}

void save_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write dataset file: " + path);
    out.precision(17);
    for (std::size_t c = 0; c < dataset.feature_names.size(); ++c) {
        out << dataset.feature_names[c] << ',';
    }
    out << "label\n";
    for (std::size_t r = 0; r < dataset.num_samples(); ++r) {
        for (double v : dataset.features[r]) out << v << ',';
        out << dataset.class_names[static_cast<std::size_t>(dataset.labels[r])] << '\n';
    }
}

Dataset normalize_minmax(const Dataset& dataset) {
    if (dataset.normalized)
        throw std::logic_error("normalize_minmax: dataset already normalized");
    Dataset out = dataset;
    const std::size_t d = dataset.num_features();
    out.column_ranges.resize(d);
    for (std::size_t c = 0; c < d; ++c) {
        double lo = dataset.features[0][c];
        double hi = lo;
        for (const auto& row : dataset.features) {
            lo = std::min(lo, row[c]);
            hi = std::max(hi, row[c]);
        }
        out.column_ranges[c] = {lo, hi};
        const double span = hi - lo;
        for (std::size_t r = 0; r < dataset.num_samples(); ++r) {
            out.features[r][c] = span > 0.0 ? (dataset.features[r][c] - lo) / span : 0.0;
        }
    }
    out.normalized = true;
    return out;
}

Dataset apply_normalization(const Dataset& dataset,
                            const std::vector<std::pair<double, double>>& column_ranges) {
    if (column_ranges.size() != dataset.num_features())
        throw std::invalid_argument("apply_normalization: column count mismatch");
    Dataset out = dataset;
    for (std::size_t c = 0; c < column_ranges.size(); ++c) {
        const auto [lo, hi] = column_ranges[c];
        const double span = hi - lo;
        for (std::size_t r = 0; r < out.num_samples(); ++r) {
            out.features[r][c] = span > 0.0 ? (dataset.features[r][c] - lo) / span : 0.0;
        }
    }
    out.normalized = true;
    out.column_ranges = column_ranges;
    return out;
}

std::vector<Finding> validate(const Dataset& dataset) {
    std::vector<Finding> findings;

    std::vector<std::size_t> class_counts(dataset.num_classes(), 0);
    for (int l : dataset.labels) ++class_counts[static_cast<std::size_t>(l)];
    if (!class_counts.empty()) {
        const auto [mn, mx] = std::minmax_element(class_counts.begin(), class_counts.end());
        if (*mn > 0 && static_cast<double>(*mx) / static_cast<double>(*mn) > 1.5) {
            findings.push_back({Finding::Severity::warning,
                                "class imbalance: largest class has " + std::to_string(*mx) +
                                    " samples, smallest " + std::to_string(*mn)});
        }
    }

    for (std::size_t r = 0; r < dataset.num_samples(); ++r) {
        for (std::size_t c = 0; c < dataset.features[r].size(); ++c) {
            if (!std::isfinite(dataset.features[r][c])) {
                findings.push_back({Finding::Severity::error,
                                    "non-finite value at row " + std::to_string(r + 1) +
                                        ", column " + std::to_string(c + 1)});
            }
        }
    }

    std::set<std::vector<double>> seen;
    for (std::size_t r = 0; r < dataset.num_samples(); ++r) {
        if (!seen.insert(dataset.features[r]).second) {
            findings.push_back({Finding::Severity::warning,
                                "duplicate feature row at row " + std::to_string(r + 1)});
        }
    }
    return findings;
}

}  // namespace bcddo
