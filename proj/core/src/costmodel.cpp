// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/costmodel.hpp>
#include <elnet/data.hpp>
#include <elnet/errors.hpp>
#include <algorithm>
#include <charconv>
#include <sstream>

namespace elnet
{
namespace
{
int64_t parse_int(std::string_view s, std::string_view what)
{
    int64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ConfigError{"bad integer in " + std::string{what} + ": '" + std::string{s} + "'"};
    return v;
}

Cost cost_from_json(const nlohmann::json& j)
{
    if (j.is_number_integer())
        return {j.get<int64_t>(), 0};
    if (j.is_object())
        return {j.value("M", int64_t{0}), j.value("I", int64_t{0})};
    throw ConfigError{"cost entry must be an integer or {\"M\":..,\"I\":..}"};
}

nlohmann::json cost_to_json(const Cost& c)
{
    if (c.i == 0)
        return c.m;
    return {{"M", c.m}, {"I", c.i}};
}
}  // namespace

// ---------------------------------------------------------------------------

std::string Cost::str() const
{
    std::string s;
    if (m != 0 || i == 0)
        s = std::to_string(m) + "M";
    if (i != 0)
        s += (s.empty() ? "" : "+") + std::to_string(i) + "I";
    return s;
}

Cost Cost::parse(std::string_view s)
{
    Cost c;
    std::size_t pos = 0;
    if (s.empty())
        throw ConfigError{"empty cost"};
    while (pos < s.size())
    {
        std::size_t end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
            ++end;
        if (end == s.size())
            throw ConfigError{"cost '" + std::string{s} + "' lacks a unit"};
        const int64_t n = end == pos ? 1 : parse_int(s.substr(pos, end - pos), "cost");
        if (s[end] == 'M')
            c.m += n;
        else if (s[end] == 'I')
            c.i += n;
        else
            throw ConfigError{"cost '" + std::string{s} + "' has an unknown unit"};
        pos = end + 1;
        if (pos < s.size())
        {
            if (s[pos] != '+')
                throw ConfigError{"cost '" + std::string{s} + "' is malformed"};
            ++pos;
        }
    }
    return c;
}

std::string CostKey::str() const
{
    return std::string{to_string(kind)} + std::to_string(level);
}

CostKey CostKey::parse(std::string_view s)
{
    if (s.size() < 2)
        throw ConfigError{"bad cost key '" + std::string{s} + "'"};
    OpKind k;
    switch (s[0])
    {
    case 'M':
        k = OpKind::M;
        break;
    case 'S':
        k = OpKind::S;
        break;
    case 'I':
        k = OpKind::I;
        break;
    default:
        throw ConfigError{"bad cost key '" + std::string{s} + "'"};
    }
    const int64_t l = parse_int(s.substr(1), "cost key");
    if (l < 1 || l > static_cast<int64_t>(kMaxLevel))
        throw ConfigError{"cost key level out of range: '" + std::string{s} + "'"};
    return {k, static_cast<unsigned>(l)};
}

// ---------------------------------------------------------------------------

CostTable CostTable::from_json(const nlohmann::json& j)
{
    CostTable t;
    try
    {
        t.name_ = j.value("name", std::string{"custom"});
        for (const auto& [key, v] : j.at("prices").items())
            t.prices_[CostKey::parse(key)] = cost_from_json(v);
        if (j.contains("frobenius"))
            for (const auto& f : j.at("frobenius"))
                t.frob_[{f.at("level").get<unsigned>(), f.at("power").get<unsigned>()}] = cost_from_json(
                    nlohmann::json{{"M", f.value("M", int64_t{0})}, {"I", f.value("I", int64_t{0})}});
        if (j.contains("extras"))
            for (const auto& [fam, list] : j.at("extras").items())
            {
                auto& out = t.extras_[parse_family(fam)];
                for (const auto& e : list)
                {
                    Extra x;
                    x.label = e.value("label", std::string{});
                    if (e.contains("cost"))
                        x.cost = cost_from_json(e.at("cost"));
                    if (e.contains("terms"))
                        for (const auto& [k, n] : e.at("terms").items())
                            x.terms[CostKey::parse(k)] = n.get<int64_t>();
                    out.push_back(std::move(x));
                }
            }
        if (j.contains("miller"))
            for (const auto& [fam, m] : j.at("miller").items())
            {
                MillerModel mm;
                if (m.contains("constant"))
                    mm.constant = m.at("constant").get<int64_t>();
                else
                {
                    mm.dbl = m.at("double").get<int64_t>();
                    mm.add = m.at("add").get<int64_t>();
                    mm.level = m.at("level").get<unsigned>();
                }
                t.miller_[parse_family(fam)] = mm;
            }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError{std::string{"cost table: "} + e.what()};
    }
    catch (const UsageError& e)
    {
        throw ConfigError{std::string{"cost table: "} + e.what()};
    }
    return t;
}

const CostTable& CostTable::builtin()
{
    static const CostTable t = from_json(data::document("cost_table"));
    return t;
}

bool CostTable::priced(const CostKey& k) const
{
    return k.level == 1 ? k.kind != OpKind::S || prices_.count(k) : prices_.count(k) > 0;
}

Cost CostTable::price(const CostKey& k) const
{
    if (const auto it = prices_.find(k); it != prices_.end())
        return it->second;
    if (k.level == 1 && k.kind == OpKind::M)
        return {1, 0};
    if (k.level == 1 && k.kind == OpKind::I)
        return {0, 1};
    throw UnpricedEntry{k.str()};
}

Cost CostTable::frobenius(unsigned level, unsigned power) const
{
    if (const auto it = frob_.find({level, power}); it != frob_.end())
        return it->second;
    throw UnpricedEntry{"F" + std::to_string(level) + "^" + std::to_string(power)};
}

const std::vector<CostTable::Extra>& CostTable::extras(Family f) const
{
    static const std::vector<Extra> none;
    const auto it = extras_.find(f);
    return it == extras_.end() ? none : it->second;
}

const CostTable::MillerModel& CostTable::miller(Family f) const
{
    const auto it = miller_.find(f);
    if (it == miller_.end())
        throw UnpricedEntry{"miller/" + std::string{family_name(f)}};
    return it->second;
}

nlohmann::json CostTable::to_json() const
{
    nlohmann::json j;
    j["name"] = name_;
    for (const auto& [k, c] : prices_)
        j["prices"][k.str()] = cost_to_json(c);
    j["frobenius"] = nlohmann::json::array();
    for (const auto& [k, c] : frob_)
        j["frobenius"].push_back({{"level", k.first}, {"power", k.second}, {"M", c.m}, {"I", c.i}});
    for (const auto& [f, list] : extras_)
    {
        auto& arr = j["extras"][std::string{family_name(f)}];
        for (const auto& x : list)
        {
            nlohmann::json e{{"label", x.label}};
            if (x.cost != Cost{})
                e["cost"] = cost_to_json(x.cost);
            for (const auto& [k, n] : x.terms)
                e["terms"][k.str()] = n;
            arr.push_back(e);
        }
    }
    for (const auto& [f, m] : miller_)
    {
        auto& o = j["miller"][std::string{family_name(f)}];
        if (m.constant)
            o["constant"] = *m.constant;
        else
            o = {{"double", m.dbl}, {"add", m.add}, {"level", m.level}};
    }
    return j;
}

// ---------------------------------------------------------------------------

void CostExpr::add(CostKey k, int64_t n)
{
    if (n == 0)
        return;
    if ((terms_[k] += n) == 0)
        terms_.erase(k);
}

void CostExpr::add_frob(unsigned level, unsigned power, int64_t n)
{
    if (n != 0 && (frob_[{level, power}] += n) == 0)
        frob_.erase({level, power});
}

CostExpr& CostExpr::operator+=(const CostExpr& o)
{
    for (const auto& [k, n] : o.terms_)
        add(k, n);
    for (const auto& [k, n] : o.frob_)
        add_frob(k.first, k.second, n);
    constant_ += o.constant_;
    return *this;
}

CostExpr operator*(int64_t n, const CostExpr& e)
{
    CostExpr r;
    for (const auto& [k, c] : e.terms_)
        r.add(k, n * c);
    for (const auto& [k, c] : e.frob_)
        r.add_frob(k.first, k.second, n * c);
    r.constant_ = n * e.constant_;
    return r;
}

int64_t CostExpr::count(CostKey k) const
{
    const auto it = terms_.find(k);
    return it == terms_.end() ? 0 : it->second;
}

Cost CostExpr::reduce(const CostTable& t) const
{
    Cost c = constant_;
    for (const auto& [k, n] : terms_)
        c += n * t.price(k);
    for (const auto& [k, n] : frob_)
        c += n * t.frobenius(k.first, k.second);
    return c;
}

std::optional<Cost> CostExpr::bound(const CostTable& t) const
{
    Cost c = constant_;
    for (const auto& [k, n] : terms_)
    {
        if (t.priced(k))
            c += n * t.price(k);
        else if (k.kind == OpKind::S && t.priced({OpKind::M, k.level}))
            c += n * t.price({OpKind::M, k.level});
        else
            return std::nullopt;
    }
    for (const auto& [k, n] : frob_)
    {
        try
        {
            c += n * t.frobenius(k.first, k.second);
        }
        catch (const UnpricedEntry&)
        {
            return std::nullopt;
        }
    }
    return c;
}

CostExpr CostExpr::from_tally(const Tally& t, Bucket b)
{
    CostExpr e;
    for (unsigned k = 0; k < 3; ++k)
        for (unsigned l = 1; l <= kMaxLevel; ++l)
            if (const uint64_t n = t.get(static_cast<OpKind>(k), l, b))
                e.add({static_cast<OpKind>(k), l}, static_cast<int64_t>(n));
    if (b == Bucket::main)
        for (const auto& [k, n] : t.frob)
            e.add_frob(k.first, k.second, static_cast<int64_t>(n));
    return e;
}

std::string CostExpr::str() const
{
    std::string s;
    auto emit = [&s](int64_t n, const std::string& unit) {
        if (!s.empty())
            s += '+';
        if (n != 1)
            s += std::to_string(n);
        s += unit;
    };
    // Highest levels first, multiplications before squarings.
    std::vector<std::pair<CostKey, int64_t>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.first.level != b.first.level)
            return a.first.level < b.first.level;
        return a.first.kind < b.first.kind;
    });
    for (const auto& [k, n] : v)
        emit(n, std::string{to_string(k.kind)} + "_" + std::to_string(k.level));
    for (const auto& [k, n] : frob_)
        emit(n, "F_" + std::to_string(k.first) + "^" + std::to_string(k.second));
    if (constant_ != Cost{})
    {
        if (!s.empty())
            s += '+';
        s += constant_.str();
    }
    return s.empty() ? "0" : s;
}

nlohmann::json CostExpr::to_json() const
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, n] : terms_)
        j[k.str()] = n;
    for (const auto& [k, n] : frob_)
        j["F" + std::to_string(k.first) + "^" + std::to_string(k.second)] = n;
    if (constant_ != Cost{})
        j["constant"] = constant_.str();
    return j;
}

// ---------------------------------------------------------------------------

void SymCost::add(OpKind k, SymLevel l, DeltaCoeff c)
{
    auto& d = terms_[{l, k}];
    d.a += c.a;
    d.b += c.b;
    if (d == DeltaCoeff{})
        terms_.erase({l, k});
}

SymCost& SymCost::operator+=(const SymCost& o)
{
    for (const auto& [key, c] : o.terms_)
        add(key.second, key.first, c);
    return *this;
}

CostExpr SymCost::instantiate(unsigned e, unsigned delta, unsigned k) const
{
    CostExpr x;
    for (const auto& [key, c] : terms_)
    {
        const unsigned level = key.first == SymLevel::e ? e : key.first == SymLevel::half ? k / 2 : k;
        x.add({key.second, level}, c.a + c.b * static_cast<int64_t>(delta));
    }
    return x;
}

std::string SymCost::str() const
{
    // Printed order: M_e, S_e, M_{k/2}, S_{k/2}, M_k, S_k.
    std::string s;
    for (SymLevel l : {SymLevel::e, SymLevel::half, SymLevel::k})
        for (OpKind k : {OpKind::M, OpKind::S, OpKind::I})
        {
            const auto it = terms_.find({l, k});
            if (it == terms_.end())
                continue;
            const DeltaCoeff c = it->second;
            if (!s.empty())
                s += '+';
            std::string coef;
            if (c.b == 0)
                coef = c.a == 1 ? "" : std::to_string(c.a);
            else
            {
                const std::string d = (c.b == 1 ? "" : std::to_string(c.b)) + "δ";
                coef = c.a == 0 ? d : "(" + std::to_string(c.a) + "+" + d + ")";
            }
            s += coef + to_string(k) + (l == SymLevel::e ? "_e" : l == SymLevel::half ? "_{k/2}" : "_k");
        }
    return s.empty() ? "0" : s;
}

SymCost SymCost::parse(std::string_view s)
{
    static constexpr std::string_view kDelta = "δ";
    SymCost out;
    std::size_t pos = 0;
    auto fail = [&s]() { return ConfigError{"bad step cost formula '" + std::string{s} + "'"}; };
    auto parse_coeff = [&](std::string_view t) {
        // "7", "2δ", "δ", "7+2δ"
        DeltaCoeff c;
        std::size_t i = 0;
        while (i < t.size())
        {
            std::size_t j = i;
            while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j])))
                ++j;
            const int64_t n = j == i ? 1 : parse_int(t.substr(i, j - i), "formula");
            if (t.substr(j, kDelta.size()) == kDelta)
            {
                c.b += n;
                j += kDelta.size();
            }
            else if (j == i)
                throw fail();
            else
                c.a += n;
            i = j;
            if (i < t.size())
            {
                if (t[i] != '+')
                    throw fail();
                ++i;
            }
        }
        return c;
    };
    while (pos < s.size())
    {
        DeltaCoeff c{1, 0};
        if (s[pos] == '(')
        {
            const std::size_t close = s.find(')', pos);
            if (close == std::string_view::npos)
                throw fail();
            c = parse_coeff(s.substr(pos + 1, close - pos - 1));
            pos = close + 1;
        }
        else
        {
            std::size_t j = pos;
            while (j < s.size() && s[j] != 'M' && s[j] != 'S' && s[j] != 'I')
                ++j;
            if (j > pos)
                c = parse_coeff(s.substr(pos, j - pos));
            pos = j;
        }
        if (pos >= s.size())
            throw fail();
        const OpKind k = s[pos] == 'M' ? OpKind::M : s[pos] == 'S' ? OpKind::S : OpKind::I;
        ++pos;
        SymLevel l;
        if (s.substr(pos, 2) == "_e")
        {
            l = SymLevel::e;
            pos += 2;
        }
        else if (s.substr(pos, 6) == "_{k/2}")
        {
            l = SymLevel::half;
            pos += 6;
        }
        else if (s.substr(pos, 2) == "_k")
        {
            l = SymLevel::k;
            pos += 2;
        }
        else
            throw fail();
        out.add(k, l, c);
        if (pos < s.size())
        {
            if (s[pos] != '+')
                throw fail();
            ++pos;
        }
    }
    return out;
}

SymCost slot_cost(Slot s)
{
    SymCost c;
    const auto i = static_cast<int>(s);
    if (s >= Slot::U1 && s <= Slot::U12)
    {
        const int n = i - static_cast<int>(Slot::U1) + 1;
        c.add(n % 2 ? OpKind::M : OpKind::S, SymLevel::e, {1, 0});
    }
    else if (s == Slot::V1)
        c.add(OpKind::M, SymLevel::k, {1, 0});
    else if (s == Slot::V2)
        c.add(OpKind::S, SymLevel::k, {1, 0});
    else if (s >= Slot::L1 && s <= Slot::L9)
        c.add(OpKind::M, SymLevel::e, {2, 0});
    else if (s >= Slot::X0 && s <= Slot::X7)
        c.add(OpKind::M, SymLevel::e, {0, 1});
    else if (s == Slot::T1)
        c.add(OpKind::M, SymLevel::half, {2, 0});
    else if (s == Slot::T4)
        c.add(OpKind::M, SymLevel::k, {1, 0});
    return c;
}

StepCostSpec StepCostSpec::of(Family f, unsigned processors, StepKind kind)
{
    const auto& fp = family_params(f);
    return {fp.e, fp.delta, fp.k, processors, kind};
}

SymCost step_closed_form(unsigned processors, StepKind kind)
{
    if (processors != 4 && processors != 8)
        throw UsageError{"only 4 and 8 processors have schedules"};
    const auto& j = data::document("expected_costs").at("closed_forms");
    const std::string key = std::string{step_kind_name(kind)} + std::to_string(processors);
    return SymCost::parse(j.at(key).get<std::string>());
}

CostExpr step_cost(const StepCostSpec& spec)
{
    return step_closed_form(spec.processors, spec.kind).instantiate(spec.e, spec.delta, spec.k);
}

CostExpr sequential_step_cost(unsigned e, unsigned delta, unsigned k, StepKind kind)
{
    SymCost c;
    for (Slot s : step_slots(kind))
        c += slot_cost(s);
    return c.instantiate(e, delta, k);
}

PairingCostReport pairing_cost(Family f, const LoopPlan& plan, unsigned processors, const CostTable& t)
{
    PairingCostReport r;
    r.family = f;
    r.processors = processors;
    r.doublings = plan.steps();
    r.additions = plan.additions();
    const CostExpr dbl = step_cost(StepCostSpec::of(f, processors, StepKind::dbl));
    const CostExpr add = step_cost(StepCostSpec::of(f, processors, StepKind::add));
    r.loop = static_cast<int64_t>(r.doublings) * dbl + static_cast<int64_t>(r.additions) * add;
    for (const auto& x : t.extras(f))
    {
        r.extras.add_constant(x.cost);
        for (const auto& [k, n] : x.terms)
            r.extras.add(k, n);
    }
    r.total = r.loop + r.extras;
    r.reduced = r.total.reduce(t);
    const CostExpr walk = static_cast<int64_t>(r.doublings - r.additions) * dbl +
                          static_cast<int64_t>(r.additions) * add + r.extras;
    r.actual_walk = walk.reduce(t);
    return r;
}

CostExpr miller_cost(Family f, const LoopPlan& plan, const CostTable& t)
{
    const auto& m = t.miller(f);
    CostExpr c;
    if (m.constant)
    {
        c.add_constant({*m.constant, 0});
        return c;
    }
    const auto d = static_cast<int64_t>(plan.steps());
    const auto a = static_cast<int64_t>(plan.additions());
    c.add_constant({d * m.dbl + a * m.add, 0});
    c.add({OpKind::S, m.level}, d - 1);
    c.add({OpKind::M, m.level}, d + a - 1);
    return c;
}

// ---------------------------------------------------------------------------

std::string ModelReport::str() const
{
    std::ostringstream os;
    os << (match ? "match" : "MISMATCH") << ": measured " << measured.str();
    for (const auto& d : diffs)
        os << "\n  " << d.key.str() << ": measured " << d.measured << ", model " << d.expected;
    os << "\n  scale bucket: " << scale.str();
    return os.str();
}

ModelReport measured_vs_model(const Tally& measured, const CostExpr& expected)
{
    ModelReport r;
    r.measured = CostExpr::from_tally(measured, Bucket::main);
    r.scale = CostExpr::from_tally(measured, Bucket::scale);
    std::map<CostKey, std::pair<int64_t, int64_t>> all;
    for (const auto& [k, n] : r.measured.terms())
        all[k].first = n;
    for (const auto& [k, n] : expected.terms())
        all[k].second = n;
    for (const auto& [k, v] : all)
        if (v.first != v.second)
            r.diffs.push_back({k, v.first, v.second});
    r.match = r.diffs.empty();
    return r;
}

std::vector<CostRow> cost_rows(const CostTable& t)
{
    std::vector<CostRow> rows;
    for (const auto& ref : reference_rows())
    {
        const LoopPlan plan = loop_plan(ref.family, parse_seed(ref.seed));
        CostRow r;
        r.security = ref.security;
        r.row = ref.id;
        r.family = ref.family;
        r.miller = miller_cost(ref.family, plan, t).reduce(t);
        r.proc4 = pairing_cost(ref.family, plan, 4, t).reduced;
        r.proc8 = pairing_cost(ref.family, plan, 8, t).reduced;
        rows.push_back(r);
    }
    return rows;
}

std::vector<ExpectedRow> expected_rows()
{
    std::vector<ExpectedRow> v;
    for (const auto& j : data::document("expected_costs").at("rows"))
        v.push_back({j.at("security").get<unsigned>(), j.at("row").get<std::string>(),
                     Cost::parse(j.at("miller").get<std::string>()), Cost::parse(j.at("proc4").get<std::string>()),
                     Cost::parse(j.at("proc8").get<std::string>())});
    return v;
}

std::vector<ExpectedStep> expected_steps()
{
    std::vector<ExpectedStep> v;
    for (const auto& j : data::document("expected_costs").at("steps"))
        v.push_back({parse_family(j.at("family").get<std::string>()), j.at("double4").get<int64_t>(),
                     j.at("add4").get<int64_t>(), j.at("step8").get<int64_t>()});
    return v;
}

std::vector<std::string> check_cost_rows(const std::vector<CostRow>& rows)
{
    std::vector<std::string> bad;
    const auto expected = expected_rows();
    for (const auto& e : expected)
    {
        const auto it = std::find_if(rows.begin(), rows.end(), [&](const CostRow& r) { return r.row == e.row; });
        if (it == rows.end())
        {
            bad.push_back(e.row + ": missing");
            continue;
        }
        auto cmp = [&](const char* metric, const Cost& got, const Cost& want) {
            if (!(got == want))
                bad.push_back(e.row + " " + metric + ": got " + got.str() + ", expected " + want.str());
        };
        cmp("miller", it->miller, e.miller);
        cmp("4-proc", it->proc4, e.proc4);
        cmp("8-proc", it->proc8, e.proc8);
    }
    return bad;
}
}  // namespace elnet
