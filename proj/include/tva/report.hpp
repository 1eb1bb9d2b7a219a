#pragma once

// Structured verification reports.

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tva {

struct ReportItem {
    std::string id;
    std::string family;
    nlohmann::json inputs;
    std::string expected;
    std::string computed;
    std::string residual;
    bool pass = true;
};

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

/// Counts every check; keeps every failing item and the first `max_passing`
/// passing items so that exhaustive sweeps stay writable.
class VerificationReport {
public:
    explicit VerificationReport(std::string suite = "", std::size_t max_passing = 200)
        : suite_(std::move(suite)), max_passing_(max_passing) {}

    void set_scenario_hash(std::string h) { scenario_hash_ = std::move(h); }
    [[nodiscard]] const std::string& suite() const noexcept { return suite_; }
    [[nodiscard]] const std::string& scenario_hash() const noexcept { return scenario_hash_; }

    void add(ReportItem item) {
        auto& f = families_[item.family];
        ++f.total;
        if (item.pass) {
            ++f.passed;
            if (kept_passing_ >= max_passing_) return;
            ++kept_passing_;
        }
        items_.push_back(std::move(item));
    }

    /// Whether a passing item would still be listed.
    [[nodiscard]] bool wants_passing() const noexcept { return kept_passing_ < max_passing_; }

    /// Records a passing check without materializing an item.
    void count_pass(const std::string& family, std::size_t n = 1) {
        auto& f = families_[family];
        f.total += n;
        f.passed += n;
    }

    void merge(const VerificationReport& o) {
        for (const auto& [name, f] : o.families_) {
            families_[name].total += f.total;
            families_[name].passed += f.passed;
        }
        for (const auto& it : o.items_) items_.push_back(it);
    }

    [[nodiscard]] bool passed() const {
        for (const auto& [name, f] : families_)
            if (f.passed != f.total) return false;
        return true;
    }
    [[nodiscard]] std::size_t total() const {
        std::size_t t = 0;
        for (const auto& [name, f] : families_) t += f.total;
        return t;
    }
    [[nodiscard]] std::size_t failures() const {
        std::size_t t = 0;
        for (const auto& [name, f] : families_) t += f.total - f.passed;
        return t;
    }
    [[nodiscard]] const std::vector<ReportItem>& items() const noexcept { return items_; }

    [[nodiscard]] nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["suite"] = suite_;
        j["scenario_hash"] = scenario_hash_;
        j["items"] = nlohmann::ordered_json::array();
        for (const auto& it : items_) {
            nlohmann::ordered_json e;
            e["id"] = it.id;
            e["family"] = it.family;
            e["inputs"] = it.inputs;
            e["expected"] = it.expected;
            e["computed"] = it.computed;
            e["pass"] = it.pass;
            e["residual"] = it.residual;
            j["items"].push_back(std::move(e));
        }
        nlohmann::ordered_json summary;
        summary["total"] = total();
        summary["failures"] = failures();
        summary["pass"] = passed();
        summary["items_listed"] = items_.size();
        nlohmann::ordered_json fam;
        for (const auto& [name, f] : families_) fam[name] = {{"total", f.total}, {"passed", f.passed}};
        summary["families"] = fam;
        j["summary"] = summary;
        return j;
    }

    [[nodiscard]] std::string to_text() const {
        std::string s = suite_ + ": " + (passed() ? "PASS" : "FAIL") + " (" + std::to_string(total() - failures()) + "/" +
                        std::to_string(total()) + " checks)\n";
        for (const auto& [name, f] : families_)
            s += "  " + name + ": " + std::to_string(f.passed) + "/" + std::to_string(f.total) + "\n";
        for (const auto& it : items_)
            if (!it.pass) s += "  FAILED " + it.id + ": residual " + it.residual + "\n";
        return s;
    }

private:
    struct Family {
        std::size_t total = 0;
        std::size_t passed = 0;
    };
    std::string suite_;
    std::string scenario_hash_;
    std::size_t max_passing_;
    std::size_t kept_passing_ = 0;
    std::map<std::string, Family> families_;
    std::vector<ReportItem> items_;
};

}  // namespace tva
