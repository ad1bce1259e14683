#include "neuro01/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "neuro01/errors.hpp"

namespace neuro01 {
namespace {

Dataset uniform_features(std::size_t n, std::size_t p, RandomStream& rng) {
    Dataset d;
    d.X = Matrix(n, p);
    d.y.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) d.X(i, j) = rng.uniform(-1.0, 1.0);
    }
    d.feature_names.reserve(p);
    for (std::size_t j = 0; j < p; ++j) d.feature_names.push_back("x" + std::to_string(j + 1));
    d.target_name = "y";
    return d;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    std::string out(s.substr(b, e - b + 1));
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
    return out;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    const char* b = cell.data();
    const char* e = b + cell.size();
    if (*b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e && std::isfinite(out);
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Table parse_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Table t;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_line(line);
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw DataError("csv: line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                            " cells, expected " + std::to_string(t.header.size()));
        }
        std::vector<double> row(cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (!parse_double(cells[j], row[j])) {
                const std::size_t data_row = t.rows.size() + 1;
                throw NonNumericCell("csv: non-numeric cell '" + cells[j] + "' at data row " + std::to_string(data_row) +
                                         ", column '" + t.header[j] + "'",
                                     data_row, t.header[j]);
            }
        }
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw EmptyFile("csv: file is empty");
    if (t.rows.empty()) throw EmptyFile("csv: file has a header but no data rows");
    return t;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Dataset generate_linear(std::size_t n, std::size_t p, RandomStream& rng) {
    if (p < 10) throw InvalidConfig("linear model needs p >= 10");
    Dataset d = uniform_features(n, p, rng);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 10; ++j) s += d.X(i, j);
        d.y[i] = s + 1.8 * rng.normal();
    }
    return d;
}

Dataset generate_xor(std::size_t n, std::size_t p, RandomStream& rng) {
    if (p < 3) throw InvalidConfig("xor model needs p >= 3");
    Dataset d = uniform_features(n, p, rng);
    for (std::size_t i = 0; i < n; ++i) {
        d.y[i] = 2.0 * d.X(i, 0) * d.X(i, 1) + 0.5 * d.X(i, 2) + 0.3 * rng.normal();
    }
    return d;
}

double r2_score(std::span<const double> y_true, std::span<const double> y_pred) {
    if (y_true.size() != y_pred.size()) throw InvalidInput("r2_score: length mismatch");
    if (y_true.size() < 2) throw InvalidInput("r2_score: needs at least two values");
    const double mean = std::accumulate(y_true.begin(), y_true.end(), 0.0) / static_cast<double>(y_true.size());
    double ssr = 0.0;
    double sst = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        ssr += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
        sst += (y_true[i] - mean) * (y_true[i] - mean);
    }
    if (!(sst > 0.0)) throw UndefinedMetric("r2_score: truth has zero variance");
    return 1.0 - ssr / sst;
}

Dataset parse_csv(const std::string& text, const std::string& target) {
    Table t = parse_table(text);
    std::size_t target_col = t.header.size();
    for (std::size_t j = 0; j < t.header.size(); ++j) {
        if (t.header[j] == target) target_col = j;
    }
    if (target_col == t.header.size()) throw MissingColumn("csv: target column '" + target + "' not found");
    if (t.header.size() < 2) throw DataError("csv: no feature columns besides the target");

    Dataset d;
    d.target_name = target;
    for (std::size_t j = 0; j < t.header.size(); ++j) {
        if (j != target_col) d.feature_names.push_back(t.header[j]);
    }
    d.X = Matrix(t.rows.size(), t.header.size() - 1);
    d.y.resize(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < t.header.size(); ++j) {
            if (j == target_col) {
                d.y[i] = t.rows[i][j];
            } else {
                d.X(i, c++) = t.rows[i][j];
            }
        }
    }
    return d;
}

Dataset load_csv(const std::filesystem::path& path, const std::string& target) {
    return parse_csv(read_file(path), target);
}

Matrix load_feature_csv(const std::filesystem::path& path, std::vector<std::string>* names) {
    Table t = parse_table(read_file(path));
    Matrix X(t.rows.size(), t.header.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < t.header.size(); ++j) X(i, j) = t.rows[i][j];
    }
    if (names) *names = t.header;
    return X;
}

Split random_split(std::size_t n, double fraction, RandomStream& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.index(i)]);
    const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    Split s;
    s.first.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    s.second.assign(idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end());
    std::sort(s.first.begin(), s.first.end());
    std::sort(s.second.begin(), s.second.end());
    return s;
}

} // namespace neuro01
