#include "bmcm/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "bmcm/rng.hpp"

namespace bmcm {

const char* to_string(NullClass c) {
    switch (c) {
        case NullClass::AllOnePos: return "all_one_pos";
        case NullClass::AllZeroNeg: return "all_zero_neg";
        case NullClass::AllOneNeg: return "all_one_neg";
        case NullClass::AllZeroPos: return "all_zero_pos";
        case NullClass::NonNull: return "non_null";
    }
    return "?";
}

Dataset::Dataset(std::vector<std::string> columns, std::string outcome,
                 std::vector<std::uint8_t> cells)
    : columns_(std::move(columns)), outcome_(std::move(outcome)), cells_(std::move(cells)) {
    if (columns_.empty()) throw DataError("dataset has no columns");
    if (cells_.size() % columns_.size() != 0) {
        throw DataError("cell count is not a multiple of the column count");
    }
    n_ = cells_.size() / columns_.size();
    if (n_ == 0) throw DataError("dataset has no rows");
    for (std::uint8_t v : cells_) {
        if (v > 1) throw DataError("dataset cells must be 0 or 1");
    }
    std::set<std::string> seen;
    for (const std::string& name : columns_) {
        if (name.empty()) throw DataError("empty column name");
        if (!seen.insert(name).second) throw DataError("duplicate column name '" + name + "'");
    }
    const auto it = std::find(columns_.begin(), columns_.end(), outcome_);
    if (it == columns_.end()) throw DataError("unknown outcome column '" + outcome_ + "'");
    outcome_index_ = static_cast<std::size_t>(it - columns_.begin());
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i != outcome_index_) explanatory_.push_back(i);
    }
    if (explanatory_.empty()) throw DataError("dataset has no explanatory columns");
}

std::size_t Dataset::column_index(const std::string& name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) throw DataError("unknown column '" + name + "'");
    return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<std::string> Dataset::explanatory_names() const {
    std::vector<std::string> out;
    out.reserve(explanatory_.size());
    for (std::size_t i : explanatory_) out.push_back(columns_[i]);
    return out;
}

NullClass Dataset::null_class(std::size_t row) const {
    const std::span<const std::uint8_t> r = this->row(row);
    bool all_one = true;
    bool all_zero = true;
    for (std::size_t i : explanatory_) {
        (r[i] ? all_zero : all_one) = false;
    }
    const bool positive = r[outcome_index_] != 0;
    if (all_one) return positive ? NullClass::AllOnePos : NullClass::AllOneNeg;
    if (all_zero) return positive ? NullClass::AllZeroPos : NullClass::AllZeroNeg;
    return NullClass::NonNull;
}

NullClass classify_null(const BitRow& row, const std::vector<std::string>& explanatory,
                        const std::string& outcome) {
    if (explanatory.empty()) throw DataError("no explanatory columns given");
    bool all_one = true;
    bool all_zero = true;
    for (const std::string& name : explanatory) {
        const auto it = row.find(name);
        if (it == row.end()) throw DataError("row is missing column '" + name + "'");
        (it->second ? all_zero : all_one) = false;
    }
    const auto out_it = row.find(outcome);
    if (out_it == row.end()) throw DataError("row is missing column '" + outcome + "'");
    const bool positive = out_it->second != 0;
    if (all_one) return positive ? NullClass::AllOnePos : NullClass::AllOneNeg;
    if (all_zero) return positive ? NullClass::AllZeroPos : NullClass::AllZeroNeg;
    return NullClass::NonNull;
}

BitRow Dataset::row_map(std::size_t i) const {
    BitRow out;
    const auto r = row(i);
    for (std::size_t c = 0; c < columns_.size(); ++c) out.emplace(columns_[c], r[c]);
    return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    out.push_back(std::move(field));
    return out;
}

// getline with CRLF tolerance
bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

Dataset load_csv(std::istream& in, const std::string& outcome) {
    std::string line;
    if (!read_line(in, line)) throw DataError("missing CSV header");
    if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0) line.erase(0, 3);

    const std::vector<std::string> columns = split_fields(line);
    const std::size_t width = columns.size();

    std::vector<std::uint8_t> cells;
    std::size_t row_number = 1;  // 1-based, header is row 1
    while (read_line(in, line)) {
        ++row_number;
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;  // trailing newline
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != width) {
            throw DataError("row " + std::to_string(row_number) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(width));
        }
        for (std::size_t c = 0; c < width; ++c) {
            const std::string& f = fields[c];
            if (f.size() != 1 || (f[0] != '0' && f[0] != '1')) {
                throw DataError("non-binary cell '" + f + "' at row " +
                                std::to_string(row_number) + ", column '" + columns[c] + "'");
            }
            cells.push_back(static_cast<std::uint8_t>(f[0] - '0'));
        }
    }
    if (cells.empty()) throw DataError("CSV contains a header but no data rows");
    return Dataset(columns, outcome, std::move(cells));
}

Dataset load_csv_file(const std::filesystem::path& path, const std::string& outcome) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return load_csv(in, outcome);
}

void write_csv(const Dataset& dataset, std::ostream& out) {
    const auto& columns = dataset.columns();
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out << ',';
        out << columns[c];
    }
    out << '\n';
    for (std::size_t i = 0; i < dataset.n(); ++i) {
        const auto row = dataset.row(i);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << static_cast<int>(row[c]);
        }
        out << '\n';
    }
}

Dataset generate_random(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    SplitMix64 gen(seed);
    std::vector<std::uint8_t> cells;
    cells.reserve(n * 4);
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < 4; ++c) cells.push_back(gen.next_bit() ? 1 : 0);
    }
    return Dataset({"x1", "x2", "x3", "xO"}, "xO", std::move(cells));
}

Dataset generate_dependent(std::size_t n, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) {
        throw InvalidArgument("n must be even and at least 2, got " + std::to_string(n));
    }
    SplitMix64 gen(seed);

    // exactly n/2 ones, placement by Fisher-Yates
    std::vector<std::uint8_t> x1(n, 0);
    std::fill(x1.begin(), x1.begin() + static_cast<std::ptrdiff_t>(n / 2), 1);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(gen.next_below(i + 1));
        std::swap(x1[i], x1[j]);
    }

    std::vector<std::uint8_t> cells;
    cells.reserve(n * 4);
    for (std::size_t i = 0; i < n; ++i) {
        cells.push_back(x1[i]);
        cells.push_back(gen.next_bit() ? 1 : 0);  // x2
        cells.push_back(gen.next_bit() ? 1 : 0);  // x3
        cells.push_back(x1[i]);                   // xO = x1
    }
    return Dataset({"x1", "x2", "x3", "xO"}, "xO", std::move(cells));
}

}  // namespace bmcm
