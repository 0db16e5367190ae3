#include "elcs/network.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <unordered_map>

namespace elcs {

CptNetwork::CptNetwork(Dag dag, std::vector<std::vector<std::string>> states, std::vector<Cpt> cpts)
    : dag_(std::move(dag)), states_(std::move(states)), cpts_(std::move(cpts)) {
    const auto n = dag_.size();
    if (states_.size() != n || cpts_.size() != n) throw DataError("network: states/cpts size differs from dag");
    for (std::size_t v = 0; v < n; ++v) {
        const auto r = states_[v].size();
        if (r < 2) throw DataError("network: variable '" + dag_.name(static_cast<Var>(v)) + "' has fewer than 2 states");
        const auto& cpt = cpts_[v];
        if (vs::normalize(cpt.parents) != dag_.parents(static_cast<Var>(v)))
            throw DataError("network: cpt parents of '" + dag_.name(static_cast<Var>(v)) + "' disagree with dag");
        std::size_t configs = 1;
        for (Var p : cpt.parents) configs *= states_[static_cast<std::size_t>(p)].size();
        if (cpt.probs.size() != configs * r)
            throw DataError("network: cpt of '" + dag_.name(static_cast<Var>(v)) + "' has wrong size");
        for (std::size_t c = 0; c < configs; ++c) {
            double sum = 0.0;
            for (std::size_t i = 0; i < r; ++i) {
                const double p = cpt.probs[c * r + i];
                if (!(p >= 0.0)) throw DataError("network: negative probability in '" + dag_.name(static_cast<Var>(v)) + "'");
                sum += p;
            }
            if (std::fabs(sum - 1.0) > 1e-9)
                throw DataError("network: cpt row of '" + dag_.name(static_cast<Var>(v)) + "' sums to " +
                                std::to_string(sum));
        }
    }
}

std::vector<int> CptNetwork::cardinalities() const {
    std::vector<int> out;
    out.reserve(states_.size());
    for (const auto& s : states_) out.push_back(static_cast<int>(s.size()));
    return out;
}

namespace {

struct Token {
    enum Kind { Word, Punct, End } kind = End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) return t;
        const char ch = src_[pos_];
        if (is_punct(ch)) {
            t.kind = Token::Punct;
            t.text = std::string(1, ch);
            advance();
            return t;
        }
        t.kind = Token::Word;
        if (ch == '"') {
            advance();
            while (pos_ < src_.size() && src_[pos_] != '"') t.text.push_back(advance());
            if (pos_ >= src_.size()) fail(t, "unterminated string");
            advance();
            return t;
        }
        while (pos_ < src_.size() && !is_punct(src_[pos_]) && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
               !starts_comment())
            t.text.push_back(advance());
        return t;
    }

    [[noreturn]] static void fail(const Token& at, const std::string& msg) {
        throw DataError("bif:" + std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + msg);
    }

private:
    static bool is_punct(char ch) {
        switch (ch) {
            case '{': case '}': case '(': case ')': case '[': case ']': case ',': case ';': case '|':
                return true;
            default:
                return false;
        }
    }

    bool starts_comment() const {
        return pos_ + 1 < src_.size() && src_[pos_] == '/' && (src_[pos_ + 1] == '/' || src_[pos_ + 1] == '*');
    }

    char advance() {
        const char ch = src_[pos_++];
        if (ch == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return ch;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                advance();
            } else if (starts_comment() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (starts_comment()) {
                Token at{Token::End, {}, line_, col_};
                advance();
                advance();
                while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) advance();
                if (pos_ + 1 >= src_.size()) fail(at, "unterminated comment");
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct VariableDecl {
    std::string name;
    std::vector<std::string> states;
    Token where;
};

struct ProbabilityDecl {
    Var child = -1;
    std::vector<Var> parents;
    std::vector<double> probs;
    Token where;
};

class BifParser {
public:
    explicit BifParser(std::string_view text) : lex_(text) { cur_ = lex_.next(); }

    CptNetwork parse() {
        while (cur_.kind != Token::End) {
            if (is_word("network")) {
                parse_network();
            } else if (is_word("variable")) {
                parse_variable();
            } else if (is_word("probability")) {
                parse_probability();
            } else {
                Lexer::fail(cur_, "expected 'network', 'variable' or 'probability', got '" + cur_.text + "'");
            }
        }
        return build();
    }

private:
    bool is_word(std::string_view w) const { return cur_.kind == Token::Word && cur_.text == w; }
    bool is_punct(char ch) const { return cur_.kind == Token::Punct && cur_.text[0] == ch; }

    Token take() {
        Token t = cur_;
        cur_ = lex_.next();
        return t;
    }

    void expect_punct(char ch) {
        if (!is_punct(ch)) Lexer::fail(cur_, std::string("expected '") + ch + "', got " + describe(cur_));
        take();
    }

    Token expect_word(const std::string& what) {
        if (cur_.kind != Token::Word) Lexer::fail(cur_, "expected " + what + ", got " + describe(cur_));
        return take();
    }

    static std::string describe(const Token& t) {
        if (t.kind == Token::End) return "end of input";
        return "'" + t.text + "'";
    }

    double parse_number() {
        const Token t = expect_word("a probability");
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(t.text, &used);
        } catch (const std::exception&) {
            Lexer::fail(t, "invalid number '" + t.text + "'");
        }
        if (used != t.text.size()) Lexer::fail(t, "invalid number '" + t.text + "'");
        if (!(value >= 0.0) || value > 1.0) Lexer::fail(t, "probability " + t.text + " outside [0, 1]");
        return value;
    }

    void parse_network() {
        take();
        while (cur_.kind == Token::Word) take();
        expect_punct('{');
        if (!is_punct('}')) Lexer::fail(cur_, "network properties are not supported");
        take();
    }

    void parse_variable() {
        take();
        VariableDecl decl;
        decl.where = expect_word("a variable name");
        decl.name = decl.where.text;
        if (index_.count(decl.name)) Lexer::fail(decl.where, "variable '" + decl.name + "' declared twice");
        expect_punct('{');
        if (is_word("property")) Lexer::fail(cur_, "variable properties are not supported");
        const Token type_kw = expect_word("'type'");
        if (type_kw.text != "type") Lexer::fail(type_kw, "expected 'type', got '" + type_kw.text + "'");
        const Token kind = expect_word("a variable type");
        if (kind.text == "continuous") Lexer::fail(kind, "continuous unsupported");
        if (kind.text != "discrete") Lexer::fail(kind, "unsupported variable type '" + kind.text + "'");
        expect_punct('[');
        const Token count_tok = expect_word("a state count");
        int count = 0;
        try {
            std::size_t used = 0;
            count = std::stoi(count_tok.text, &used);
            if (used != count_tok.text.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            Lexer::fail(count_tok, "invalid state count '" + count_tok.text + "'");
        }
        expect_punct(']');
        expect_punct('{');
        while (true) {
            decl.states.push_back(expect_word("a state name").text);
            if (is_punct(',')) {
                take();
                continue;
            }
            break;
        }
        expect_punct('}');
        expect_punct(';');
        if (static_cast<int>(decl.states.size()) != count)
            Lexer::fail(count_tok, "declared " + std::to_string(count) + " states, listed " +
                                       std::to_string(decl.states.size()));
        if (count < 2) Lexer::fail(count_tok, "a variable needs at least 2 states");
        for (std::size_t i = 0; i < decl.states.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (decl.states[i] == decl.states[j])
                    Lexer::fail(decl.where, "duplicate state '" + decl.states[i] + "'");
        if (!is_punct('}')) Lexer::fail(cur_, "unsupported content in variable block: " + describe(cur_));
        take();
        index_.emplace(decl.name, static_cast<Var>(vars_.size()));
        vars_.push_back(std::move(decl));
    }

    Var lookup(const Token& t) const {
        auto it = index_.find(t.text);
        if (it == index_.end()) Lexer::fail(t, "unknown variable '" + t.text + "'");
        return it->second;
    }

    int state_index(Var v, const Token& t) const {
        const auto& states = vars_[static_cast<std::size_t>(v)].states;
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == t.text) return static_cast<int>(i);
        Lexer::fail(t, "unknown state '" + t.text + "' of variable '" + vars_[static_cast<std::size_t>(v)].name + "'");
    }

    std::vector<double> parse_row(const Token& at, std::size_t r) {
        std::vector<double> row;
        while (true) {
            row.push_back(parse_number());
            if (is_punct(',')) {
                take();
                continue;
            }
            break;
        }
        expect_punct(';');
        if (row.size() != r)
            Lexer::fail(at, "expected " + std::to_string(r) + " probabilities, got " + std::to_string(row.size()));
        double sum = 0.0;
        for (double p : row) sum += p;
        if (std::fabs(sum - 1.0) > 1e-6) Lexer::fail(at, "probabilities sum to " + std::to_string(sum) + ", not 1");
        for (double& p : row) p /= sum;
        return row;
    }

    void parse_probability() {
        ProbabilityDecl decl;
        decl.where = take();
        expect_punct('(');
        decl.child = lookup(expect_word("a variable name"));
        if (have_cpt_.count(decl.child))
            Lexer::fail(decl.where, "second probability block for '" + vars_[static_cast<std::size_t>(decl.child)].name + "'");
        if (is_punct('|')) {
            take();
            while (true) {
                const Token pt = expect_word("a parent name");
                const Var p = lookup(pt);
                if (p == decl.child) Lexer::fail(pt, "variable is its own parent");
                for (Var q : decl.parents)
                    if (q == p) Lexer::fail(pt, "parent '" + pt.text + "' listed twice");
                decl.parents.push_back(p);
                if (is_punct(',')) {
                    take();
                    continue;
                }
                break;
            }
        }
        expect_punct(')');
        expect_punct('{');

        const auto r = vars_[static_cast<std::size_t>(decl.child)].states.size();
        std::size_t configs = 1;
        std::vector<std::size_t> radix;
        for (Var p : decl.parents) {
            radix.push_back(vars_[static_cast<std::size_t>(p)].states.size());
            configs *= radix.back();
        }
        std::vector<char> filled(configs, 0);
        decl.probs.assign(configs * r, 0.0);

        while (!is_punct('}')) {
            if (cur_.kind == Token::End) Lexer::fail(cur_, "unterminated probability block");
            if (is_word("table")) {
                const Token at = take();
                if (!decl.parents.empty()) Lexer::fail(at, "'table' rows are only supported without parents");
                if (filled[0]) Lexer::fail(at, "duplicate table");
                auto row = parse_row(at, r);
                std::copy(row.begin(), row.end(), decl.probs.begin());
                filled[0] = 1;
            } else if (is_punct('(')) {
                const Token at = take();
                if (decl.parents.empty()) Lexer::fail(at, "configuration row for a variable without parents");
                std::size_t cfg = 0;
                for (std::size_t i = 0; i < decl.parents.size(); ++i) {
                    if (i > 0) expect_punct(',');
                    const Token st = expect_word("a parent state");
                    cfg = cfg * radix[i] + static_cast<std::size_t>(state_index(decl.parents[i], st));
                }
                expect_punct(')');
                if (filled[cfg]) Lexer::fail(at, "duplicate configuration row");
                auto row = parse_row(at, r);
                std::copy(row.begin(), row.end(), decl.probs.begin() + static_cast<std::ptrdiff_t>(cfg * r));
                filled[cfg] = 1;
            } else {
                Lexer::fail(cur_, "unsupported probability entry " + describe(cur_));
            }
        }
        const Token close = take();
        for (std::size_t c = 0; c < configs; ++c) {
            if (filled[c]) continue;
            std::string label;
            std::size_t rest = c;
            std::vector<std::string> parts(decl.parents.size());
            for (std::size_t i = decl.parents.size(); i-- > 0;) {
                parts[i] = vars_[static_cast<std::size_t>(decl.parents[i])].states[rest % radix[i]];
                rest /= radix[i];
            }
            for (std::size_t i = 0; i < parts.size(); ++i) label += (i ? ", " : "") + parts[i];
            Lexer::fail(close, "missing CPT row (" + label + ") for '" + vars_[static_cast<std::size_t>(decl.child)].name + "'");
        }
        have_cpt_.emplace(decl.child, probs_.size());
        probs_.push_back(std::move(decl));
    }

    CptNetwork build() {
        const auto n = vars_.size();
        std::vector<std::string> names;
        std::vector<std::vector<std::string>> states;
        std::vector<VarSet> parents(n);
        std::vector<Cpt> cpts(n);
        for (const auto& v : vars_) {
            names.push_back(v.name);
            states.push_back(v.states);
        }
        for (std::size_t v = 0; v < n; ++v) {
            auto it = have_cpt_.find(static_cast<Var>(v));
            if (it == have_cpt_.end()) Lexer::fail(vars_[v].where, "no probability block for '" + vars_[v].name + "'");
            auto& decl = probs_[it->second];
            parents[v] = decl.parents;
            cpts[v] = Cpt{decl.parents, std::move(decl.probs)};
        }
        try {
            Dag dag(names, std::move(parents));
            return CptNetwork(std::move(dag), std::move(states), std::move(cpts));
        } catch (const CycleError& e) {
            std::string path;
            for (Var v : e.cycle) path += vars_[static_cast<std::size_t>(v)].name + " -> ";
            path += vars_[static_cast<std::size_t>(e.cycle.front())].name;
            const Token& at = probs_[have_cpt_.at(e.cycle.front())].where;
            throw CycleError("bif:" + std::to_string(at.line) + ":" + std::to_string(at.col) + ": cycle " + path, e.cycle);
        }
    }

    Lexer lex_;
    Token cur_;
    std::vector<VariableDecl> vars_;
    std::unordered_map<std::string, Var> index_;
    std::vector<ProbabilityDecl> probs_;
    std::unordered_map<Var, std::size_t> have_cpt_;
};

// Seeds the engine state from a 64-bit seed through the splitmix64 finalizer
// so nearby seeds give unrelated streams.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CptNetwork parse_bif(std::string_view text) { return BifParser(text).parse(); }

CptNetwork load_bif(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("bif: cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_bif(ss.str());
}

Dataset sample(const CptNetwork& net, std::size_t n, std::uint64_t seed) {
    const std::size_t nv = net.size();
    std::uint64_t sm = seed;
    std::mt19937_64 rng(splitmix64(sm));
    // Uniform in [0, 1) from the top 53 bits; std distributions are not
    // bit-reproducible across standard libraries.
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::vector<std::vector<Code>> columns(nv, std::vector<Code>(n));
    const auto& order = net.dag().topo_order();
    for (std::size_t row = 0; row < n; ++row) {
        for (Var v : order) {
            const auto& cpt = net.cpt(v);
            std::size_t cfg = 0;
            for (Var p : cpt.parents)
                cfg = cfg * static_cast<std::size_t>(net.cardinality(p)) +
                      static_cast<std::size_t>(columns[static_cast<std::size_t>(p)][row]);
            const auto r = static_cast<std::size_t>(net.cardinality(v));
            const double u = uniform();
            double acc = 0.0;
            std::size_t pick = r;
            std::size_t last_positive = 0;
            for (std::size_t i = 0; i < r; ++i) {
                const double p = cpt.probs[cfg * r + i];
                if (p > 0.0) last_positive = i;
                acc += p;
                if (u < acc && pick == r) pick = i;
            }
            // u can exceed the accumulated sum by rounding; fall back to the
            // last state with positive mass.
            if (pick == r) pick = last_positive;
            columns[static_cast<std::size_t>(v)][row] = static_cast<Code>(pick);
        }
    }
    return Dataset(net.dag().names(), net.cardinalities(), std::move(columns));
}

}  // namespace elcs
