#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace afcm {

/// A clustering input: one sample per column, features along rows.
/// Immutable value type; every operation below returns a fresh Dataset.
struct Dataset {
    Eigen::MatrixXd features;              // d x n
    std::vector<int> labels;               // length n, or empty when absent
    std::vector<std::string> label_names;  // label id -> original text
    std::string name;

    Eigen::Index dim() const { return features.rows(); }
    Eigen::Index samples() const { return features.cols(); }
    bool has_labels() const { return !labels.empty(); }
    int num_classes() const;
};

/// Load a CSV with one sample per row. A header row is auto-detected (any
/// non-numeric cell in the first row). `label_column` selects the label
/// column by header name or 0-based index; empty means no labels. Label
/// values are mapped to dense ids 0..c-1 in order of first appearance.
Dataset load_csv(const std::string& path, const std::string& label_column = "");

/// Write one sample per row; labels (original text) appended as a final
/// column when present.
void write_csv(const Dataset& data, const std::string& path, bool header = true);

/// Rescale every feature to [0,1] via (x - min) / (max - min).
/// Constant features map to all-zeros. Labels pass through untouched.
Dataset minmax_normalize(const Dataset& data);

/// Two interlocking planar spirals, `samples_per_cluster` points each; the
/// second spiral is the first rotated by pi. `noise` is the std of isotropic
/// Gaussian jitter. Deterministic per seed.
Dataset gen_two_spirals(int samples_per_cluster, double noise, std::uint64_t seed);

/// Three concentric rings at the given strictly increasing radii.
Dataset gen_three_rings(int samples_per_cluster, const std::array<double, 3>& radii,
                        double noise, std::uint64_t seed);

}  // namespace afcm
