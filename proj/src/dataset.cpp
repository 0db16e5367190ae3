#include "elcs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace elcs {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell.push_back(ch);
        }
    }
    cells.push_back(cell);
    return cells;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

Dataset::Dataset(std::vector<std::string> names, std::vector<int> cardinalities,
                 std::vector<std::vector<Code>> columns)
    : names_(std::move(names)), cards_(std::move(cardinalities)), columns_(std::move(columns)) {
    if (cards_.size() != names_.size() || columns_.size() != names_.size())
        throw DataError("dataset: names, cardinalities and columns differ in length");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw DataError("dataset: empty variable name");
        if (!seen.insert(n).second) throw DataError("dataset: duplicate variable name '" + n + "'");
    }
    rows_ = columns_.empty() ? 0 : columns_.front().size();
    for (std::size_t v = 0; v < names_.size(); ++v) {
        if (cards_[v] < 2)
            throw DataError("dataset: variable '" + names_[v] + "' has cardinality " + std::to_string(cards_[v]) +
                            " (< 2)");
        if (columns_[v].size() != rows_) throw DataError("dataset: column '" + names_[v] + "' has wrong length");
        for (std::size_t r = 0; r < rows_; ++r) {
            const Code c = columns_[v][r];
            if (c < 0 || c >= cards_[v])
                throw DataError("dataset: code " + std::to_string(c) + " out of range for '" + names_[v] + "' at row " +
                                std::to_string(r + 1));
        }
    }
}

std::optional<Var> Dataset::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Var>(it - names_.begin());
}

Dataset parse_csv(std::istream& in, std::optional<std::vector<int>> cardinalities) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("csv: missing header row");
    std::vector<std::string> names;
    for (auto& cell : split_commas(line)) names.push_back(trim(cell));
    {
        std::unordered_map<std::string, std::size_t> seen;
        for (std::size_t c = 0; c < names.size(); ++c) {
            if (names[c].empty()) throw DataError("csv: header column " + std::to_string(c + 1) + " is empty");
            auto [it, fresh] = seen.emplace(names[c], c);
            if (!fresh)
                throw DataError("csv: duplicate header name '" + names[c] + "' in columns " +
                                std::to_string(it->second + 1) + " and " + std::to_string(c + 1));
        }
    }

    std::vector<std::vector<Code>> columns(names.size());
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        const auto cells = split_commas(line);
        if (cells.size() != names.size())
            throw DataError("csv: row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                            " cells, header has " + std::to_string(names.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            long long value = 0;
            const char* begin = cell.data();
            const char* end = begin + cell.size();
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (cell.empty() || ec != std::errc{} || ptr != end)
                throw DataError("csv: row " + std::to_string(row) + ", column '" + names[c] +
                                "': non-integer cell '" + cell + "'");
            if (value < 0)
                throw DataError("csv: row " + std::to_string(row) + ", column '" + names[c] + "': negative code " +
                                cell);
            if (value > std::numeric_limits<Code>::max())
                throw DataError("csv: row " + std::to_string(row) + ", column '" + names[c] + "': code too large");
            columns[c].push_back(static_cast<Code>(value));
        }
    }

    std::vector<int> cards;
    if (cardinalities) {
        if (cardinalities->size() != names.size())
            throw DataError("card: " + std::to_string(cardinalities->size()) + " cardinalities for " +
                            std::to_string(names.size()) + " variables");
        cards = *cardinalities;
        for (std::size_t c = 0; c < names.size(); ++c) {
            auto it = std::max_element(columns[c].begin(), columns[c].end());
            if (it != columns[c].end() && *it >= cards[c])
                throw DataError("csv: column '" + names[c] + "' has code " + std::to_string(*it) +
                                " but declared cardinality " + std::to_string(cards[c]));
        }
    } else {
        for (const auto& col : columns) {
            const Code mx = col.empty() ? 0 : *std::max_element(col.begin(), col.end());
            cards.push_back(std::max(2, mx + 1));
        }
    }
    return Dataset(std::move(names), std::move(cards), std::move(columns));
}

std::vector<int> parse_cards(std::istream& in) {
    std::vector<int> cards;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        int value = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc{} || ptr != t.data() + t.size() || value < 2)
            throw DataError("card: line " + std::to_string(lineno) + ": expected an integer >= 2, got '" + t + "'");
        cards.push_back(value);
    }
    return cards;
}

std::filesystem::path card_path_for(const std::filesystem::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".card");
    return p;
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("csv: cannot open '" + path.string() + "'");
    std::optional<std::vector<int>> cards;
    const auto card_path = card_path_for(path);
    if (std::filesystem::exists(card_path)) {
        std::ifstream cin(card_path);
        if (!cin) throw DataError("card: cannot open '" + card_path.string() + "'");
        cards = parse_cards(cin);
    }
    return parse_csv(in, std::move(cards));
}

void write_csv(const Dataset& data, std::ostream& out) {
    const auto& names = data.names();
    for (std::size_t v = 0; v < names.size(); ++v) out << (v ? "," : "") << names[v];
    out << '\n';
    std::string line;
    for (std::size_t r = 0; r < data.row_count(); ++r) {
        line.clear();
        for (std::size_t v = 0; v < names.size(); ++v) {
            if (v) line.push_back(',');
            line += std::to_string(data.column(static_cast<Var>(v))[r]);
        }
        line.push_back('\n');
        out << line;
    }
}

void write_cards(const Dataset& data, std::ostream& out) {
    for (int r : data.cardinalities()) out << r << '\n';
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("csv: cannot write '" + path.string() + "'");
    write_csv(data, out);
    std::ofstream cards(card_path_for(path), std::ios::binary);
    if (!cards) throw DataError("card: cannot write '" + card_path_for(path).string() + "'");
    write_cards(data, cards);
}

ContingencyTable contingency(const Dataset& data, Var x, Var y, const VarSet& z) {
    const auto nvars = static_cast<Var>(data.var_count());
    auto check = [nvars](Var v) {
        if (v < 0 || v >= nvars) throw std::out_of_range("contingency: variable index " + std::to_string(v));
    };
    check(x);
    check(y);
    for (Var w : z) check(w);
    if (x == y) throw std::invalid_argument("contingency: x == y");
    if (vs::contains(z, x) || vs::contains(z, y))
        throw std::invalid_argument("contingency: x or y in conditioning set");

    ContingencyTable t;
    t.rx = data.cardinality(x);
    t.ry = data.cardinality(y);
    t.n = static_cast<std::int64_t>(data.row_count());
    const std::size_t rows = data.row_count();
    const std::size_t cell_count = static_cast<std::size_t>(t.rx) * static_cast<std::size_t>(t.ry);
    const auto xs = data.column(x);
    const auto ys = data.column(y);

    // Mixed-radix stratum key, first variable of z most significant, so key
    // order equals lexicographic tuple order.
    std::vector<std::uint64_t> keys(rows, 0);
    std::uint64_t space = 1;
    bool overflow = false;
    for (Var w : z) {
        const auto r = static_cast<std::uint64_t>(data.cardinality(w));
        if (space > std::numeric_limits<std::uint64_t>::max() / r) overflow = true;
        space *= r;
        const auto col = data.column(w);
        for (std::size_t i = 0; i < rows; ++i) keys[i] = keys[i] * r + static_cast<std::uint64_t>(col[i]);
    }

    std::vector<std::size_t> stratum_of(rows);
    if (!overflow && space <= (std::uint64_t{1} << 20)) {
        std::vector<std::int64_t> dense(space, -1);
        for (std::size_t i = 0; i < rows; ++i) dense[keys[i]] = 0;
        std::size_t next = 0;
        for (auto& slot : dense)
            if (slot == 0) slot = static_cast<std::int64_t>(next++);
        for (std::size_t i = 0; i < rows; ++i) stratum_of[i] = static_cast<std::size_t>(dense[keys[i]]);
        t.strata = next;
    } else if (!overflow) {
        std::vector<std::uint64_t> uniq = keys;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (std::size_t i = 0; i < rows; ++i)
            stratum_of[i] = static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), keys[i]) - uniq.begin());
        t.strata = uniq.size();
    } else {
        // Key space beyond 64 bits: order rows by full tuple.
        std::vector<std::size_t> order(rows);
        for (std::size_t i = 0; i < rows; ++i) order[i] = i;
        auto less = [&](std::size_t a, std::size_t b) {
            for (Var w : z) {
                const auto col = data.column(w);
                if (col[a] != col[b]) return col[a] < col[b];
            }
            return false;
        };
        std::stable_sort(order.begin(), order.end(), less);
        std::size_t next = 0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i > 0 && less(order[i - 1], order[i])) ++next;
            stratum_of[order[i]] = next;
        }
        t.strata = rows ? next + 1 : 0;
    }

    t.counts.assign(t.strata * cell_count, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t cell = stratum_of[i] * cell_count + static_cast<std::size_t>(xs[i]) * static_cast<std::size_t>(t.ry) +
                                 static_cast<std::size_t>(ys[i]);
        ++t.counts[cell];
    }
    return t;
}

}  // namespace elcs
