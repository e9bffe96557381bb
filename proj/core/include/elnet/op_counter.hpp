// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace elnet
{
inline constexpr unsigned kMaxLevel = 48;

enum class OpKind : uint8_t
{
    M,
    S,
    I
};

/// Tallies land in `main` unless a ScaleBucket guard is active. The scale bucket
/// holds constant rescalings that the published step costs leave out.
enum class Bucket : uint8_t
{
    main,
    scale
};

const char* to_string(OpKind k);

/// Per-level operation counts.
struct Tally
{
    std::array<std::array<std::array<uint64_t, kMaxLevel + 1>, 3>, 2> ops{};
    std::map<std::pair<unsigned, unsigned>, uint64_t> frob;  ///< (level, power) -> count

    void add(OpKind k, unsigned level, uint64_t n = 1, Bucket b = Bucket::main);
    uint64_t get(OpKind k, unsigned level, Bucket b = Bucket::main) const;
    void merge(const Tally& other);
    Tally& operator+=(const Tally& other)
    {
        merge(other);
        return *this;
    }
    bool empty() const;
    friend bool operator==(const Tally&, const Tally&) = default;

    /// Entries as {"M12": 3, ...}; the scale bucket is nested under "scale".
    nlohmann::json to_json() const;
    std::string str() const;
};

/// Opens a counting scope on the calling thread. Scopes nest: closing a scope adds
/// its tallies to the enclosing one.
class CountScope
{
public:
    CountScope();
    ~CountScope();
    CountScope(const CountScope&) = delete;
    CountScope& operator=(const CountScope&) = delete;

    const Tally& tally() const { return tally_; }
    void absorb(const Tally& t) { tally_.merge(t); }

private:
    CountScope* parent_;
    Tally tally_;
};

/// Routes tallies on this thread to the scale bucket while alive.
class ScaleBucket
{
public:
    ScaleBucket();
    ~ScaleBucket();
    ScaleBucket(const ScaleBucket&) = delete;
    ScaleBucket& operator=(const ScaleBucket&) = delete;

private:
    Bucket saved_;
};

/// Suspends counting on this thread while alive (setup work, oracles).
class Uncounted
{
public:
    Uncounted();
    ~Uncounted();
    Uncounted(const Uncounted&) = delete;
    Uncounted& operator=(const Uncounted&) = delete;

private:
    CountScope* saved_scope_;
    Tally* saved_sink_;
};

namespace counter
{
void record(OpKind k, unsigned level, uint64_t n = 1);
void record_frob(unsigned level, unsigned power);
/// Adds a tally gathered on another thread to this thread's innermost scope.
void merge_into_current(const Tally& t);
bool active();
}  // namespace counter
}  // namespace elnet
