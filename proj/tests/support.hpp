#pragma once

#include "enzq/core.hpp"
#include "enzq/io.hpp"

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace enzq::test {

/// Ginibre-distributed mixed state A A^dag / Tr(A A^dag).
inline DensityMatrix random_state(std::mt19937_64 &rng, Basis b = Basis::Product) {
    std::normal_distribution<double> n;
    Matrix4c a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            a(i, j) = {n(rng), n(rng)};
    Matrix4c m = a * a.adjoint();
    m /= m.trace();
    return {m, b};
}

inline Eigen::Matrix2cd random_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    Eigen::Matrix2cd a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            a(i, j) = {n(rng), n(rng)};
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(a);
    return qr.householderQ();
}

inline Matrix4c kron(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Matrix4c k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}

struct Csv {
    std::vector<std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string &name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return i;
        throw std::out_of_range("no column " + name);
    }
    double num(std::size_t row, const std::string &name) const {
        return io::parse_double(rows.at(row).at(col(name))).value();
    }
};

inline Csv parse_csv(const std::string &text) {
    Csv csv;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string::npos)
            end = text.size();
        const std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty())
            continue;
        if (line.front() == '#') {
            csv.meta.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        for (auto c : io::split(line, ','))
            cells.emplace_back(c);
        if (csv.header.empty())
            csv.header = std::move(cells);
        else
            csv.rows.push_back(std::move(cells));
    }
    return csv;
}

struct RunResult {
    int exit_code;
    std::string output; ///< stdout and stderr interleaved
};

/// Runs a shell command line, capturing combined output.
inline RunResult run(const std::string &cmd) {
    RunResult r{-1, {}};
    FILE *p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.output.append(buf, n);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
    auto d = std::filesystem::temp_directory_path() / ("enzq_test_" + name);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

} // namespace enzq::test
