#include "dedekind/antichain.hpp"

#include <algorithm>
#include <array>

namespace dedekind {

namespace {

struct CellTables {
    std::array<CellMask, 128> sub{};
    std::array<CellMask, 128> sup{};
    CellTables() {
        for (int c = 0; c < 128; ++c) {
            CellMask subs = 0;
            // enumerate submasks of c, including c and 0
            int m = c;
            while (true) {
                subs |= cell_bit(m);
                if (m == 0) break;
                m = (m - 1) & c;
            }
            sub[c] = subs;
        }
        for (int c = 0; c < 128; ++c) {
            CellMask sups = 0;
            for (int d = c; d < 128; ++d)
                if ((c & ~d) == 0) sups |= cell_bit(d);
            sup[c] = sups;
        }
    }
};

const CellTables& tables() {
    static const CellTables t;
    return t;
}

} // namespace

CellMask subset_cells(SetMask c) { return tables().sub[c]; }
CellMask superset_cells(SetMask c) { return tables().sup[c]; }

void check_base(int n) {
    if (n < 0 || n > kMaxBase)
        throw invalid_input_error("base set size must be between 0 and 7, got " + std::to_string(n));
}

Antichain Antichain::normalized(std::vector<SetMask> raw, int n) {
    check_base(n);
    for (SetMask x : raw)
        if (x & ~full_set(n)) throw invalid_input_error("element out of range for base set");
    std::sort(raw.begin(), raw.end(), set_less);
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    Antichain a;
    a.n = n;
    // keep X unless a strictly larger member dominates it; scanning from large to small
    for (auto it = raw.rbegin(); it != raw.rend(); ++it) {
        bool dominated = false;
        for (SetMask kept : a.sets)
            if ((*it & ~kept) == 0) { dominated = true; break; }
        if (!dominated) a.sets.push_back(*it);
    }
    std::sort(a.sets.begin(), a.sets.end(), set_less);
    return a;
}

Antichain Antichain::from_sets(std::vector<SetMask> sets, int n) {
    check_base(n);
    std::sort(sets.begin(), sets.end(), set_less);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i] & ~full_set(n)) throw invalid_input_error("element out of range for base set");
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if ((sets[i] & ~sets[j]) == 0 || (sets[j] & ~sets[i]) == 0)
                throw invalid_input_error("sets are not pairwise incomparable");
    }
    Antichain a;
    a.n = n;
    a.sets = std::move(sets);
    return a;
}

bool Antichain::contains(SetMask x) const {
    for (SetMask s : sets)
        if (s == x) return true;
    return false;
}

bool dominates(const Antichain& a, SetMask x) {
    for (SetMask s : a.sets)
        if ((x & ~s) == 0) return true;
    return false;
}

bool leq(const Antichain& a, const Antichain& b) {
    check_same_base(a, b);
    for (SetMask x : a.sets)
        if (!dominates(b, x)) return false;
    return true;
}

Antichain join(const Antichain& a, const Antichain& b) {
    check_same_base(a, b);
    std::vector<SetMask> u = a.sets;
    u.insert(u.end(), b.sets.begin(), b.sets.end());
    return Antichain::normalized(std::move(u), a.n);
}

Antichain meet(const Antichain& a, const Antichain& b) {
    check_same_base(a, b);
    std::vector<SetMask> inters;
    inters.reserve(a.sets.size() * b.sets.size());
    for (SetMask x : a.sets)
        for (SetMask y : b.sets)
            inters.push_back(static_cast<SetMask>(x & y));
    return Antichain::normalized(std::move(inters), a.n);
}

SetMask span(const Antichain& a) {
    SetMask s = 0;
    for (SetMask x : a.sets) s |= x;
    return s;
}

Antichain direct_product(const Antichain& a, const Antichain& b) {
    check_same_base(a, b);
    if (span(a) & span(b))
        throw invalid_input_error("direct product requires disjoint spans");
    std::vector<SetMask> u;
    u.reserve(a.sets.size() * b.sets.size());
    for (SetMask x : a.sets)
        for (SetMask y : b.sets)
            u.push_back(static_cast<SetMask>(x | y));
    // disjoint spans make the products pairwise incomparable already
    return Antichain::normalized(std::move(u), a.n);
}

CellMask antichain_cells(const Antichain& a, int* out_n) {
    CellMask m = 0;
    for (SetMask x : a.sets) m |= subset_cells(x);
    if (out_n) *out_n = a.n;
    return m;
}

Downset to_downset(const Antichain& a) { return Downset(antichain_cells(a), a.n); }

Antichain antichain_from_cells(CellMask member, int n) {
    Antichain a;
    a.n = n;
    int cells = cell_count(n);
    CellMask universe = all_cells(n);
    for (int c = 0; c < cells; ++c) {
        if (!((member >> c) & 1)) continue;
        CellMask strict_sup = superset_cells(static_cast<SetMask>(c)) & universe & ~cell_bit(c);
        if ((member & strict_sup) == 0) a.sets.push_back(static_cast<SetMask>(c));
    }
    std::sort(a.sets.begin(), a.sets.end(), set_less);
    return a;
}

bool is_downward_closed(CellMask member, int n) {
    CellMask rest = member & all_cells(n);
    if (rest != member) return false;
    while (rest) {
        int c = countr_zero128(rest);
        rest &= rest - 1;
        if (subset_cells(static_cast<SetMask>(c)) & ~member) return false;
    }
    return true;
}

Antichain from_downset(const Downset& d) {
    if (!is_downward_closed(d.member, d.n))
        throw invalid_input_error("bitset is not downward closed");
    return antichain_from_cells(d.member, d.n);
}

CellMask dual_cells(CellMask member, int n) {
    SetMask full = full_set(n);
    int cells = cell_count(n);
    CellMask out = 0;
    for (int c = 0; c < cells; ++c)
        if (!((member >> (full ^ c)) & 1)) out |= cell_bit(c);
    return out;
}

Antichain dual(const Antichain& a) {
    return antichain_from_cells(dual_cells(antichain_cells(a), a.n), a.n);
}

bool downset_value_less(const Antichain& a, const Antichain& b) {
    return antichain_cells(a) < antichain_cells(b);
}

std::string format_set(SetMask x) {
    if (x == 0) return "0";
    std::string s;
    for (int e = 1; e <= kMaxBase; ++e)
        if (x & (1u << (e - 1))) s += static_cast<char>('0' + e);
    return s;
}

std::string format_antichain(const Antichain& a) {
    std::string s = "{";
    for (std::size_t i = 0; i < a.sets.size(); ++i) {
        if (i) s += ",";
        s += format_set(a.sets[i]);
    }
    s += "}";
    return s;
}

Antichain parse_antichain(const std::string& text, int n, bool normalize) {
    check_base(n);
    std::size_t b = text.find_first_not_of(" \t");
    std::size_t e = text.find_last_not_of(" \t");
    if (b == std::string::npos || text[b] != '{' || text[e] != '}')
        throw invalid_input_error("antichain must be enclosed in braces: " + text);
    std::string body = text.substr(b + 1, e - b - 1);
    if (!body.empty() && body.back() == ',')
        throw invalid_input_error("trailing comma in antichain: " + text);
    std::vector<SetMask> sets;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? body.size() : comma + 1;
        std::size_t tb = tok.find_first_not_of(" \t");
        std::size_t te = tok.find_last_not_of(" \t");
        if (tb == std::string::npos) throw invalid_input_error("empty member in antichain: " + text);
        tok = tok.substr(tb, te - tb + 1);
        SetMask x = 0;
        if (tok == "0") {
            sets.push_back(0);
            continue;
        }
        char prev = 0;
        for (char ch : tok) {
            if (ch < '1' || ch > '7')
                throw invalid_input_error("bad element '" + std::string(1, ch) + "' in " + text);
            if (ch <= prev)
                throw invalid_input_error("set digits must be strictly increasing: " + tok);
            int elem = ch - '0';
            if (elem > n)
                throw invalid_input_error("element " + std::to_string(elem) + " out of range for n=" +
                                          std::to_string(n));
            x |= static_cast<SetMask>(1u << (elem - 1));
            prev = ch;
        }
        sets.push_back(x);
    }
    if (normalize) return Antichain::normalized(std::move(sets), n);
    return Antichain::from_sets(std::move(sets), n);
}

std::size_t AntichainHash::operator()(const Antichain& a) const {
    return CellMaskHash{}(antichain_cells(a)) ^ (static_cast<std::size_t>(a.n) << 1);
}

} // namespace dedekind
