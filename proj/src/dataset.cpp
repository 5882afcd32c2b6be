#include "afcm/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_map>

#include "afcm/errors.hpp"

namespace afcm {

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
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& raw, double& out) {
    const std::string s = trim(raw);
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

int Dataset::num_classes() const {
    if (labels.empty()) return 0;
    return 1 + *std::max_element(labels.begin(), labels.end());
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        rows.push_back(split_line(line));
    }
    if (rows.empty()) throw ParseError("'" + path + "' is empty");

    // Header detection: any cell of the first row that fails to parse as a
    // number makes it a header.
    bool has_header = false;
    for (const auto& cell : rows.front()) {
        double v;
        if (!parse_double(cell, v)) {
            has_header = true;
            break;
        }
    }
    std::vector<std::string> header;
    std::size_t first_data = 0;
    if (has_header) {
        for (const auto& cell : rows.front()) header.push_back(trim(cell));
        first_data = 1;
        if (rows.size() == 1) throw ParseError("'" + path + "' has a header but no data rows");
    }

    const std::size_t width = rows[first_data].size();
    if (width == 0) throw ParseError("'" + path + "' first data row is empty");

    // Resolve the label column: header name first, then 0-based index.
    int label_idx = -1;
    if (!label_column.empty()) {
        auto it = std::find(header.begin(), header.end(), label_column);
        if (it != header.end()) {
            label_idx = static_cast<int>(it - header.begin());
        } else {
            int idx;
            const std::string t = trim(label_column);
            auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), idx);
            if (ec != std::errc() || ptr != t.data() + t.size())
                throw ParseError("label column '" + label_column + "' not found in '" + path + "'");
            if (idx < 0 || idx >= static_cast<int>(width))
                throw ParseError("label column index " + std::to_string(idx) +
                                 " out of range (row width " + std::to_string(width) + ")");
            label_idx = idx;
        }
    }

    const std::size_t n = rows.size() - first_data;
    const std::size_t d = width - (label_idx >= 0 ? 1 : 0);
    if (d == 0) throw ParseError("'" + path + "' has no feature columns");

    Dataset out;
    out.features.resize(d, n);
    std::unordered_map<std::string, int> label_ids;
    if (label_idx >= 0) out.labels.reserve(n);

    for (std::size_t r = 0; r < n; ++r) {
        const auto& cells = rows[first_data + r];
        const std::size_t line_no = first_data + r + 1;
        if (cells.size() != width)
            throw ParseError("row " + std::to_string(line_no) + " of '" + path + "' has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(width));
        std::size_t f = 0;
        for (std::size_t col = 0; col < width; ++col) {
            if (static_cast<int>(col) == label_idx) {
                const std::string text = trim(cells[col]);
                auto [it, inserted] =
                    label_ids.emplace(text, static_cast<int>(label_ids.size()));
                if (inserted) out.label_names.push_back(text);
                out.labels.push_back(it->second);
                continue;
            }
            double v;
            if (!parse_double(cells[col], v))
                throw ParseError("row " + std::to_string(line_no) + ", column " +
                                 std::to_string(col + 1) + " of '" + path +
                                 "': cannot parse '" + trim(cells[col]) + "' as a number");
            out.features(f++, r) = v;
        }
    }

    auto slash = path.find_last_of("/\\");
    out.name = slash == std::string::npos ? path : path.substr(slash + 1);
    if (auto dot = out.name.find_last_of('.'); dot != std::string::npos)
        out.name = out.name.substr(0, dot);
    return out;
}

void write_csv(const Dataset& data, const std::string& path, bool header) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out.precision(17);
    if (header) {
        for (Eigen::Index f = 0; f < data.dim(); ++f) {
            if (f) out << ',';
            out << 'x' << f;
        }
        if (data.has_labels()) out << ",label";
        out << '\n';
    }
    for (Eigen::Index i = 0; i < data.samples(); ++i) {
        for (Eigen::Index f = 0; f < data.dim(); ++f) {
            if (f) out << ',';
            out << data.features(f, i);
        }
        if (data.has_labels()) out << ',' << data.label_names[data.labels[i]];
        out << '\n';
    }
}

Dataset minmax_normalize(const Dataset& data) {
    Dataset out = data;
    for (Eigen::Index f = 0; f < out.dim(); ++f) {
        const double lo = out.features.row(f).minCoeff();
        const double hi = out.features.row(f).maxCoeff();
        if (hi > lo) {
            out.features.row(f) = (out.features.row(f).array() - lo) / (hi - lo);
        } else {
            out.features.row(f).setZero();
        }
    }
    return out;
}

Dataset gen_two_spirals(int samples_per_cluster, double noise, std::uint64_t seed) {
    if (samples_per_cluster < 1)
        throw std::invalid_argument("samples_per_cluster must be >= 1");
    const int n = samples_per_cluster;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, 1.0);

    // Angle sweeps 1.5 turns, radius grows linearly to 1.
    const double t0 = 0.5 * std::numbers::pi;
    const double t1 = 3.5 * std::numbers::pi;

    Dataset out;
    out.features.resize(2, 2 * n);
    out.labels.resize(2 * n);
    out.label_names = {"0", "1"};
    out.name = "two_spirals";
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? t0 : t0 + (t1 - t0) * i / (n - 1);
        const double r = t / t1;
        double x = r * std::cos(t) + noise * jitter(rng);
        double y = r * std::sin(t) + noise * jitter(rng);
        out.features(0, i) = x;
        out.features(1, i) = y;
        out.labels[i] = 0;
        // Second spiral: first rotated by pi.
        x = -r * std::cos(t) + noise * jitter(rng);
        y = -r * std::sin(t) + noise * jitter(rng);
        out.features(0, n + i) = x;
        out.features(1, n + i) = y;
        out.labels[n + i] = 1;
    }
    return out;
}

Dataset gen_three_rings(int samples_per_cluster, const std::array<double, 3>& radii,
                        double noise, std::uint64_t seed) {
    if (samples_per_cluster < 1)
        throw std::invalid_argument("samples_per_cluster must be >= 1");
    if (!(radii[0] > 0.0 && radii[0] < radii[1] && radii[1] < radii[2]))
        throw std::invalid_argument("ring radii must be positive and strictly increasing");
    const int n = samples_per_cluster;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, 1.0);

    Dataset out;
    out.features.resize(2, 3 * n);
    out.labels.resize(3 * n);
    out.label_names = {"0", "1", "2"};
    out.name = "three_rings";
    for (int ring = 0; ring < 3; ++ring) {
        const double r = radii[ring];
        for (int i = 0; i < n; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / n;
            out.features(0, ring * n + i) = r * std::cos(theta) + noise * jitter(rng);
            out.features(1, ring * n + i) = r * std::sin(theta) + noise * jitter(rng);
            out.labels[ring * n + i] = ring;
        }
    }
    return out;
}

}  // namespace afcm
