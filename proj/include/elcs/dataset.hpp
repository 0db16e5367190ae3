#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elcs/types.hpp"

namespace elcs {

using Code = std::int32_t;

/// Immutable column-oriented table of discrete category codes.
///
/// Each variable has a cardinality r >= 2 and every stored code lies in
/// [0, r). Safe for concurrent reads once constructed.
class Dataset {
public:
    Dataset() = default;

    /// Validates and takes ownership. Throws DataError on any invariant
    /// violation (ragged columns, out-of-range codes, duplicate names, r < 2).
    Dataset(std::vector<std::string> names, std::vector<int> cardinalities, std::vector<std::vector<Code>> columns);

    std::size_t var_count() const { return names_.size(); }
    std::size_t row_count() const { return rows_; }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Var v) const { return names_.at(static_cast<std::size_t>(v)); }
    int cardinality(Var v) const { return cards_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& cardinalities() const { return cards_; }
    std::span<const Code> column(Var v) const { return columns_.at(static_cast<std::size_t>(v)); }

    /// Index of `name`, or nullopt.
    std::optional<Var> find(const std::string& name) const;

private:
    std::vector<std::string> names_;
    std::vector<int> cards_;
    std::vector<std::vector<Code>> columns_;
    std::size_t rows_ = 0;
};

/// Parses CSV text: header of names, then rows of nonnegative integer codes.
/// Cardinalities come from `cardinalities` when given, else max code + 1
/// (floored at 2).
Dataset parse_csv(std::istream& in, std::optional<std::vector<int>> cardinalities = std::nullopt);

/// Loads `path`; a sibling file with extension `.card` overrides the
/// inferred cardinalities.
Dataset load_csv(const std::filesystem::path& path);

/// Parses a `.card` sidecar: one integer per line.
std::vector<int> parse_cards(std::istream& in);

void write_csv(const Dataset& data, std::ostream& out);
void write_cards(const Dataset& data, std::ostream& out);

/// Writes `path` and its `.card` sidecar.
void save_csv(const Dataset& data, const std::filesystem::path& path);

std::filesystem::path card_path_for(const std::filesystem::path& csv_path);

/// Counts N_{ijk} for x-level i, y-level j, stratum k. Only strata observed
/// in the data are materialized, ordered lexicographically by conditioning
/// tuple (first variable of z most significant).
struct ContingencyTable {
    int rx = 0;
    int ry = 0;
    std::size_t strata = 0;
    std::vector<std::int64_t> counts;  // [stratum][x][y], row-major
    std::int64_t n = 0;

    std::int64_t at(std::size_t k, int i, int j) const {
        return counts[(k * static_cast<std::size_t>(rx) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(ry) +
                      static_cast<std::size_t>(j)];
    }
};

/// Throws std::out_of_range for bad indices and std::invalid_argument when
/// x == y or x/y appear in z.
ContingencyTable contingency(const Dataset& data, Var x, Var y, const VarSet& z);

}  // namespace elcs
