#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bmcm/error.hpp"
#include "bmcm/expr.hpp"

namespace bmcm {

/// Row classification against the all-explanatory-1 / all-0 patterns whose
/// Boolean-function value is forced regardless of operators.
enum class NullClass : std::uint8_t {
    AllOnePos,   // every explanatory bit 1, outcome 1
    AllZeroNeg,  // every explanatory bit 0, outcome 0
    AllOneNeg,   // every explanatory bit 1, outcome 0
    AllZeroPos,  // every explanatory bit 0, outcome 1
    NonNull,
};

const char* to_string(NullClass c);

/// Immutable rows x columns binary matrix with named columns and a
/// designated outcome column. Safe for concurrent readers.
class Dataset {
public:
    /// `cells` is row-major, n x columns.size(), every value 0 or 1.
    Dataset(std::vector<std::string> columns, std::string outcome,
            std::vector<std::uint8_t> cells);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::string& outcome() const { return outcome_; }
    std::size_t outcome_index() const { return outcome_index_; }
    std::size_t n() const { return n_; }

    std::span<const std::uint8_t> row(std::size_t i) const {
        return {cells_.data() + i * columns_.size(), columns_.size()};
    }
    std::uint8_t bit(std::size_t row, std::size_t col) const {
        return cells_[row * columns_.size() + col];
    }

    /// Throws DataError for unknown names.
    std::size_t column_index(const std::string& name) const;

    /// Indices of every non-outcome column, in column order.
    const std::vector<std::size_t>& explanatory_indices() const { return explanatory_; }
    std::vector<std::string> explanatory_names() const;

    /// Classification over all explanatory columns.
    NullClass null_class(std::size_t row) const;

    /// The row as a name->bit map (for the map-based evaluate API).
    BitRow row_map(std::size_t i) const;

private:
    std::vector<std::string> columns_;
    std::string outcome_;
    std::size_t outcome_index_ = 0;
    std::vector<std::size_t> explanatory_;
    std::vector<std::uint8_t> cells_;
    std::size_t n_ = 0;
};

/// Classifies one row given explicit explanatory column names.
NullClass classify_null(const BitRow& row, const std::vector<std::string>& explanatory,
                        const std::string& outcome);

/// Reads a binary CSV: header of unique column names, then rows of 0/1
/// cells. Accepts LF or CRLF and a UTF-8 BOM. Errors report row and column.
Dataset load_csv(std::istream& in, const std::string& outcome);
Dataset load_csv_file(const std::filesystem::path& path, const std::string& outcome);

/// Header plus one line per row, comma-separated, LF line endings.
void write_csv(const Dataset& dataset, std::ostream& out);

/// Cohort with every cell an independent fair-coin bit. Columns are
/// x1, x2, x3, xO with outcome xO; cells are drawn row-major from
/// SplitMix64(seed), so (n, seed) fixes the dataset bit-for-bit.
Dataset generate_random(std::size_t n, std::uint64_t seed);

/// Cohort where x1 determines xO: x1 has exactly n/2 ones placed by a
/// seeded shuffle, xO equals x1 on every row, and x2, x3 are independent
/// fair coins. Draw order: the x1 shuffle first, then x2, x3 per row.
/// n must be even and >= 2.
Dataset generate_dependent(std::size_t n, std::uint64_t seed);

}  // namespace bmcm
