#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fibwalk/errors.hpp"

namespace fibwalk {

/// A signed real sequence defined on an inclusive integer offset range.
/// Out-of-range access throws, naming the missing offset.
class OffsetSeq {
public:
    OffsetSeq() = default;

    OffsetSeq(std::string name, int lo, std::vector<double> values)
        : name_(std::move(name)), lo_(lo), values_(std::move(values)) {}

    static OffsetSeq build(std::string name, int lo, int hi,
                           const std::function<double(int)>& fn) {
        std::vector<double> v;
        for (int j = lo; j <= hi; ++j) v.push_back(fn(j));
        return OffsetSeq(std::move(name), lo, std::move(v));
    }

    bool empty() const { return values_.empty(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(values_.size()) - 1; }

    bool contains(int j) const {
        return !values_.empty() && j >= lo() && j <= hi();
    }

    double at(int j) const {
        if (!contains(j))
            throw offset_error(name_ + "[" + std::to_string(j) +
                               "] is outside the derived range [" +
                               std::to_string(lo()) + ", " + std::to_string(hi()) +
                               "]");
        return values_[static_cast<std::size_t>(j - lo_)];
    }

    const std::string& name() const { return name_; }

private:
    std::string name_;
    int lo_ = 0;
    std::vector<double> values_;
};

/// Lambda/mu-role coefficient pair for a three-term recurrence, with an
/// optional inhomogeneous source sequence.
struct CoefficientSet {
    OffsetSeq lam;
    OffsetSeq mu;
    std::optional<OffsetSeq> inhom;
};

}  // namespace fibwalk
