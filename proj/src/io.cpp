#include "asc/io.hpp"
#include "asc/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace asc {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open file for writing: " + path);
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& raw, const std::string& context) {
    std::string s = strip(raw);
    if (s.empty()) throw InputError("empty value at " + context);
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        if (!std::isfinite(v)) throw InputError("non-finite value at " + context);
        return v;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("non-numeric value \"" + s + "\" at " + context);
    }
}

long parse_int(const std::string& raw, const std::string& context) {
    std::string s = strip(raw);
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InputError("non-integer value \"" + s + "\" at " + context);
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[32];
        snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        if (std::stod(shorter) == v) return shorter;
    }
    return buf;
}

NumericDataset load_numeric_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw InputError("empty file: " + path);
    auto header = split_csv_line(strip(line));
    if (header.size() < 2 || strip(header[0]) != "id")
        throw InputError(path + ": header must be `id,<feature names...>`");

    NumericDataset data;
    for (size_t j = 1; j < header.size(); ++j) data.features.push_back(strip(header[j]));

    std::vector<std::vector<double>> rows;
    std::unordered_set<std::string> seen;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty()) continue;
        auto cells = split_csv_line(s);
        if (cells.size() != header.size())
            throw InputError(path + ": row " + std::to_string(lineno) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
        std::string id = strip(cells[0]);
        if (!seen.insert(id).second)
            throw InputError(path + ": duplicate sample id \"" + id + "\"");
        data.samples.push_back(id);
        std::vector<double> row(data.features.size());
        for (size_t j = 1; j < cells.size(); ++j)
            row[j - 1] = parse_double(cells[j], "row " + std::to_string(lineno) +
                                                    ", column " + data.features[j - 1]);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError(path + ": no data rows");

    data.values.resize(static_cast<int>(rows.size()), static_cast<int>(data.features.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            data.values(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return data;
}

namespace {

TextDataset load_term_frequency_impl(const std::string& matrix_path,
                                     const std::string& lexicon_path,
                                     std::vector<std::string> sample_ids) {
    TextDataset data;
    {
        auto in = open_input(lexicon_path);
        std::string line;
        std::unordered_set<std::string> seen;
        while (std::getline(in, line)) {
            std::string term = strip(line);
            if (term.empty()) continue;
            if (!seen.insert(term).second)
                throw InputError(lexicon_path + ": duplicate lexicon term \"" + term + "\"");
            data.lexicon.push_back(term);
        }
        if (data.lexicon.empty()) throw InputError(lexicon_path + ": empty lexicon");
    }

    data.samples = std::move(sample_ids);
    std::unordered_map<std::string, int> row_of;
    for (size_t i = 0; i < data.samples.size(); ++i)
        row_of[data.samples[i]] = static_cast<int>(i);

    const int n = static_cast<int>(data.samples.size());
    const int q = static_cast<int>(data.lexicon.size());
    data.counts = Eigen::MatrixXd::Zero(n, q);

    auto in = open_input(matrix_path);
    std::string line;
    int lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty()) continue;
        if (first && s.rfind("doc_id", 0) == 0) { first = false; continue; }
        first = false;
        auto cells = split_csv_line(s);
        if (cells.size() != 3)
            throw InputError(matrix_path + ": line " + std::to_string(lineno) +
                             " is not a doc_id,term_index,count triplet");
        std::string ctx = "line " + std::to_string(lineno);
        std::string doc = strip(cells[0]);
        int row;
        auto it = row_of.find(doc);
        if (it != row_of.end()) {
            row = it->second;
        } else {
            long idx = -1;
            try { idx = parse_int(doc, ctx); } catch (const InputError&) { idx = -1; }
            if (idx < 0 || idx >= n)
                throw InputError(matrix_path + ": unknown doc_id \"" + doc + "\" at " + ctx);
            row = static_cast<int>(idx);
        }
        long term = parse_int(cells[1], ctx);
        if (term < 0 || term >= q)
            throw InputError(matrix_path + ": term_index " + std::to_string(term) +
                             " out of lexicon range [0," + std::to_string(q) + ") at " + ctx);
        long count = parse_int(cells[2], ctx);
        if (count < 0)
            throw InputError(matrix_path + ": negative count at " + ctx);
        data.counts(row, static_cast<int>(term)) += static_cast<double>(count);
    }
    return data;
}

} // namespace

TextDataset load_term_frequency(const std::string& matrix_path,
                                const std::string& lexicon_path,
                                const std::vector<std::string>& sample_ids) {
    return load_term_frequency_impl(matrix_path, lexicon_path, sample_ids);
}

TextDataset load_term_frequency(const std::string& matrix_path,
                                const std::string& lexicon_path, int n) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    return load_term_frequency_impl(matrix_path, lexicon_path, std::move(ids));
}

ConstraintSets load_constraints(const std::string& path, int n) {
    auto in = open_input(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("must_link") || !j.contains("cannot_link"))
        throw InputError(path + ": expected object with must_link and cannot_link arrays");
    ConstraintSets c;
    try {
        c.must_link = j["must_link"].get<std::vector<int>>();
        c.cannot_link = j["cannot_link"].get<std::vector<int>>();
    } catch (const std::exception& e) {
        throw InputError(path + ": constraint arrays must hold integers: " + e.what());
    }
    validate_constraints(c, n);
    return c;
}

void save_numeric_csv(const NumericDataset& data, const std::string& path) {
    auto out = open_output(path);
    out << "id";
    for (const auto& f : data.features) out << "," << f;
    out << "\n";
    for (int i = 0; i < data.n(); ++i) {
        out << data.samples[i];
        for (int j = 0; j < data.p(); ++j) out << "," << format_double(data.values(i, j));
        out << "\n";
    }
}

void save_term_frequency(const TextDataset& data, const std::string& path) {
    auto out = open_output(path);
    out << "doc_id,term_index,count\n";
    for (int i = 0; i < data.n(); ++i)
        for (int j = 0; j < data.q(); ++j)
            if (data.counts(i, j) != 0.0)
                out << data.samples[i] << "," << j << ","
                    << static_cast<long>(data.counts(i, j)) << "\n";
}

void save_lexicon(const TextDataset& data, const std::string& path) {
    auto out = open_output(path);
    for (const auto& t : data.lexicon) out << t << "\n";
}

void save_constraints(const ConstraintSets& c, const std::string& path) {
    nlohmann::json j;
    j["must_link"] = c.must_link;
    j["cannot_link"] = c.cannot_link;
    auto out = open_output(path);
    out << j.dump(2) << "\n";
}

void save_labels_csv(const std::vector<std::string>& ids,
                     const std::vector<int>& labels, const std::string& path) {
    auto out = open_output(path);
    out << "id,label\n";
    for (size_t i = 0; i < labels.size(); ++i) out << ids[i] << "," << labels[i] << "\n";
}

std::vector<int> load_labels_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    std::vector<int> labels;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty()) continue;
        if (lineno == 1 && s.rfind("id,", 0) == 0) continue;
        auto cells = split_csv_line(s);
        if (cells.size() != 2)
            throw InputError(path + ": line " + std::to_string(lineno) + " is not id,label");
        labels.push_back(static_cast<int>(parse_int(cells[1], "line " + std::to_string(lineno))));
    }
    return labels;
}

void save_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
    auto out = open_output(path);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ",";
            out << format_double(m(i, j));
        }
        out << "\n";
    }
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    std::vector<std::vector<double>> rows;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty()) continue;
        auto cells = split_csv_line(s);
        std::vector<double> row;
        for (size_t j = 0; j < cells.size(); ++j)
            row.push_back(parse_double(cells[j], "row " + std::to_string(lineno)));
        if (!rows.empty() && row.size() != rows[0].size())
            throw InputError(path + ": ragged row at line " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError(path + ": empty matrix");
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

void save_matrix_binary(const Eigen::MatrixXd& m, const std::string& path) {
    auto out = open_output(path);
    std::uint64_t n = static_cast<std::uint64_t>(m.rows());
    out.write(reinterpret_cast<const char*>(&n), 8);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            double v = m(i, j);
            out.write(reinterpret_cast<const char*>(&v), 8);
        }
}

Eigen::MatrixXd load_matrix_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), 8);
    if (!in || n == 0) throw InputError(path + ": bad binary matrix header");
    in.seekg(0, std::ios::end);
    std::uint64_t bytes = static_cast<std::uint64_t>(in.tellg()) - 8;
    if (bytes % (8 * n) != 0) throw InputError(path + ": truncated binary matrix");
    std::uint64_t cols = bytes / (8 * n);
    in.seekg(8, std::ios::beg);
    Eigen::MatrixXd m(n, cols);
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < cols; ++j) {
            double v;
            in.read(reinterpret_cast<char*>(&v), 8);
            m(static_cast<int>(i), static_cast<int>(j)) = v;
        }
    if (!in) throw InputError(path + ": truncated binary matrix");
    return m;
}

} // namespace asc
