// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/op_counter.hpp>
#include <sstream>

namespace elnet
{
namespace
{
thread_local CountScope* g_current = nullptr;
thread_local Bucket g_bucket = Bucket::main;
thread_local Tally* g_sink = nullptr;
}  // namespace

const char* to_string(OpKind k)
{
    switch (k)
    {
    case OpKind::M:
        return "M";
    case OpKind::S:
        return "S";
    case OpKind::I:
        return "I";
    }
    return "?";
}

void Tally::add(OpKind k, unsigned level, uint64_t n, Bucket b)
{
    ops[static_cast<unsigned>(b)][static_cast<unsigned>(k)][level] += n;
}

uint64_t Tally::get(OpKind k, unsigned level, Bucket b) const
{
    return ops[static_cast<unsigned>(b)][static_cast<unsigned>(k)][level];
}

void Tally::merge(const Tally& other)
{
    for (unsigned b = 0; b < 2; ++b)
        for (unsigned k = 0; k < 3; ++k)
            for (unsigned l = 0; l <= kMaxLevel; ++l)
                ops[b][k][l] += other.ops[b][k][l];
    for (const auto& [key, n] : other.frob)
        frob[key] += n;
}

bool Tally::empty() const
{
    return *this == Tally{};
}

nlohmann::json Tally::to_json() const
{
    nlohmann::json out = nlohmann::json::object();
    nlohmann::json scale = nlohmann::json::object();
    for (unsigned k = 0; k < 3; ++k)
        for (unsigned l = 0; l <= kMaxLevel; ++l)
        {
            const std::string key = to_string(static_cast<OpKind>(k)) + std::to_string(l);
            if (ops[0][k][l] != 0)
                out[key] = ops[0][k][l];
            if (ops[1][k][l] != 0)
                scale[key] = ops[1][k][l];
        }
    for (const auto& [key, n] : frob)
        out["F" + std::to_string(key.first) + "^" + std::to_string(key.second)] = n;
    if (!scale.empty())
        out["scale"] = scale;
    return out;
}

std::string Tally::str() const
{
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const std::string& s) {
        if (!first)
            os << " + ";
        os << s;
        first = false;
    };
    for (unsigned k = 0; k < 3; ++k)
        for (unsigned l = 0; l <= kMaxLevel; ++l)
            if (ops[0][k][l] != 0)
                emit(std::to_string(ops[0][k][l]) + to_string(static_cast<OpKind>(k)) + "_" + std::to_string(l));
    for (const auto& [key, n] : frob)
        emit(std::to_string(n) + "F_" + std::to_string(key.first) + "^" + std::to_string(key.second));
    std::ostringstream sc;
    bool any = false;
    for (unsigned k = 0; k < 3; ++k)
        for (unsigned l = 0; l <= kMaxLevel; ++l)
            if (ops[1][k][l] != 0)
            {
                sc << (any ? " + " : "") << ops[1][k][l] << to_string(static_cast<OpKind>(k)) << "_" << l;
                any = true;
            }
    std::string s = first ? std::string{"0"} : os.str();
    if (any)
        s += " [scale: " + sc.str() + "]";
    return s;
}

CountScope::CountScope() : parent_{g_current}
{
    g_current = this;
    g_sink = &tally_;
}

CountScope::~CountScope()
{
    g_current = parent_;
    g_sink = parent_ ? &parent_->tally_ : nullptr;
    if (parent_)
        parent_->tally_.merge(tally_);
}

ScaleBucket::ScaleBucket() : saved_{g_bucket}
{
    g_bucket = Bucket::scale;
}

ScaleBucket::~ScaleBucket()
{
    g_bucket = saved_;
}

Uncounted::Uncounted() : saved_scope_{g_current}, saved_sink_{g_sink}
{
    g_current = nullptr;
    g_sink = nullptr;
}

Uncounted::~Uncounted()
{
    g_current = saved_scope_;
    g_sink = saved_sink_;
}

namespace counter
{
void record(OpKind k, unsigned level, uint64_t n)
{
    if (g_sink)
        g_sink->add(k, level, n, g_bucket);
}

void record_frob(unsigned level, unsigned power)
{
    if (g_sink)
        ++g_sink->frob[{level, power}];
}

void merge_into_current(const Tally& t)
{
    if (g_current)
        g_current->absorb(t);
}

bool active()
{
    return g_sink != nullptr;
}
}  // namespace counter
}  // namespace elnet
