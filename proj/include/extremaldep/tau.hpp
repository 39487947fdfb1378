// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "extremaldep/errors.hpp"

namespace extremaldep {

// Vector of per-coordinate exceedance intensities. Entries are finite and
// >= 0; a zero entry means "this coordinate is dropped" (its level is +inf).
class TauVector {
public:
    TauVector() = default;

    explicit TauVector(std::vector<double> v) : v_(std::move(v)) {
        if (v_.empty()) throw validation_error("tau: empty vector");
        for (double x : v_) {
            if (!std::isfinite(x)) throw validation_error("tau: non-finite entry");
            if (x < 0.0) throw validation_error("tau: negative entry");
        }
    }

    TauVector(std::initializer_list<double> v) : TauVector(std::vector<double>(v)) {}

    [[nodiscard]] static TauVector unit(std::size_t dim) {
        return TauVector(std::vector<double>(dim, 1.0));
    }

    [[nodiscard]] std::size_t dim() const { return v_.size(); }
    [[nodiscard]] double operator[](std::size_t j) const { return v_[j]; }
    [[nodiscard]] std::span<const double> values() const { return v_; }

    [[nodiscard]] bool all_zero() const {
        return std::all_of(v_.begin(), v_.end(), [](double x) { return x == 0.0; });
    }

    [[nodiscard]] double sum() const { return std::accumulate(v_.begin(), v_.end(), 0.0); }

    [[nodiscard]] TauVector scaled(double c) const {
        if (!(c > 0.0) || !std::isfinite(c)) throw validation_error("tau: scale must be positive finite");
        std::vector<double> w(v_);
        for (double& x : w) x *= c;
        return TauVector(std::move(w));
    }

    // Coordinates (1-based, strictly increasing) with a positive entry.
    [[nodiscard]] std::vector<int> support() const {
        std::vector<int> s;
        for (std::size_t j = 0; j < v_.size(); ++j)
            if (v_[j] > 0.0) s.push_back(static_cast<int>(j) + 1);
        return s;
    }

    // Restrict to the given 1-based coordinates, preserving their order.
    [[nodiscard]] TauVector restrict_to(const std::vector<int>& keep) const {
        std::vector<double> w;
        w.reserve(keep.size());
        for (int j : keep) {
            if (j < 1 || static_cast<std::size_t>(j) > v_.size())
                throw validation_error("tau: restrict index out of range");
            w.push_back(v_[static_cast<std::size_t>(j - 1)]);
        }
        return TauVector(std::move(w));
    }

    // Place these entries at 1-based positions `keep` of a zero vector of size dim.
    [[nodiscard]] TauVector embed(const std::vector<int>& keep, std::size_t dim) const {
        if (keep.size() != v_.size()) throw validation_error("tau: embed index count mismatch");
        std::vector<double> w(dim, 0.0);
        for (std::size_t i = 0; i < keep.size(); ++i) {
            int j = keep[i];
            if (j < 1 || static_cast<std::size_t>(j) > dim)
                throw validation_error("tau: embed index out of range");
            w[static_cast<std::size_t>(j - 1)] = v_[i];
        }
        return TauVector(std::move(w));
    }

    [[nodiscard]] std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t j = 0; j < v_.size(); ++j) {
            if (j) os << ',';
            os << v_[j];
        }
        os << ')';
        return os.str();
    }

private:
    std::vector<double> v_;
};

// Two-block split of {1,...,d}, 1-based, e.g. "1,2|3".
class PartitionSpec {
public:
    PartitionSpec(std::vector<int> first, std::vector<int> second)
        : p_(std::move(first)), q_(std::move(second)) {
        check_block(p_, "first");
        check_block(q_, "second");
        for (int j : p_)
            if (std::find(q_.begin(), q_.end(), j) != q_.end())
                throw validation_error("partition: blocks overlap at index " + std::to_string(j));
    }

    [[nodiscard]] static PartitionSpec parse(const std::string& text) {
        auto bar = text.find('|');
        if (bar == std::string::npos) throw validation_error("partition: expected 'i,j|k' syntax");
        return PartitionSpec(parse_block(text.substr(0, bar)), parse_block(text.substr(bar + 1)));
    }

    // Canonical split of {1..d} into {1..p} | {p+1..d}.
    [[nodiscard]] static PartitionSpec leading(int p, int d) {
        std::vector<int> a(static_cast<std::size_t>(p)), b(static_cast<std::size_t>(d - p));
        std::iota(a.begin(), a.end(), 1);
        std::iota(b.begin(), b.end(), p + 1);
        return PartitionSpec(std::move(a), std::move(b));
    }

    [[nodiscard]] const std::vector<int>& first() const { return p_; }
    [[nodiscard]] const std::vector<int>& second() const { return q_; }

    // Both blocks together must cover {1..dim} exactly.
    void validate_for(std::size_t dim) const {
        std::vector<int> all(p_);
        all.insert(all.end(), q_.begin(), q_.end());
        std::sort(all.begin(), all.end());
        if (all.size() != dim)
            throw validation_error("partition: blocks cover " + std::to_string(all.size()) +
                                   " of " + std::to_string(dim) + " coordinates");
        for (std::size_t j = 0; j < all.size(); ++j)
            if (all[j] != static_cast<int>(j) + 1)
                throw validation_error("partition: blocks do not cover 1.." + std::to_string(dim));
    }

    [[nodiscard]] std::string str() const {
        auto side = [](const std::vector<int>& b) {
            std::string s;
            for (std::size_t i = 0; i < b.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(b[i]);
            }
            return s;
        };
        return side(p_) + "|" + side(q_);
    }

private:
    static void check_block(const std::vector<int>& b, const char* which) {
        if (b.empty()) throw validation_error(std::string("partition: ") + which + " block is empty");
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] < 1) throw validation_error("partition: indices are 1-based");
            if (i && b[i] <= b[i - 1])
                throw validation_error("partition: block indices must be strictly increasing");
        }
    }

    static std::vector<int> parse_block(const std::string& text) {
        std::vector<int> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                int v = std::stoi(item, &pos);
                if (pos != item.size()) throw validation_error("partition: bad index '" + item + "'");
                out.push_back(v);
            } catch (const std::invalid_argument&) {
                throw validation_error("partition: bad index '" + item + "'");
            } catch (const std::out_of_range&) {
                throw validation_error("partition: index out of range '" + item + "'");
            }
        }
        if (out.empty()) throw validation_error("partition: empty block");
        return out;
    }

    std::vector<int> p_, q_;
};

}  // namespace extremaldep
