#pragma once

#include <stdexcept>
#include <string>

namespace afcm {

/// Parse or validation failure in dataset ingestion.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A cluster lost (almost) all of its membership mass.
class DegenerateClusterError : public std::runtime_error {
public:
    DegenerateClusterError(int cluster, double mass, int iteration = -1)
        : std::runtime_error(format(cluster, mass, iteration)),
          cluster_(cluster), mass_(mass), iteration_(iteration) {}

    int cluster() const { return cluster_; }
    double mass() const { return mass_; }
    int iteration() const { return iteration_; }

private:
    static std::string format(int cluster, double mass, int iteration) {
        std::string s = "degenerate cluster " + std::to_string(cluster) +
                        " (column mass " + std::to_string(mass) + ")";
        if (iteration >= 0) s += " at iteration " + std::to_string(iteration);
        return s;
    }
    int cluster_;
    double mass_;
    int iteration_;
};

/// Dense symmetric eigensolver failure, with basic matrix diagnostics.
class EigenSolveError : public std::runtime_error {
public:
    explicit EigenSolveError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace afcm
