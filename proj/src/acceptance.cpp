#include "riskcap/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace riskcap {

using nlohmann::json;

Utility Utility::exponential(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("exponential utility needs a > 0");
    return Utility(Kind::Exponential, a);
}

Utility Utility::linear() { return Utility(Kind::Linear, 0.0); }

Utility Utility::capped_linear(double cap) {
    if (!std::isfinite(cap)) throw ValidationError("capped utility needs a finite cap");
    return Utility(Kind::CappedLinear, cap);
}

double Utility::evaluate(double x) const {
    switch (kind_) {
        case Kind::Exponential:
            // Overflow of exp(-a x) propagates to -inf, the correct extended value.
            return 1.0 - std::exp(-param_ * x);
        case Kind::Linear:
            return x;
        case Kind::CappedLinear:
            return std::min(x, param_);
    }
    return 0.0;
}

double Utility::sup_value() const {
    switch (kind_) {
        case Kind::Exponential: return 1.0;
        case Kind::Linear: return std::numeric_limits<double>::infinity();
        case Kind::CappedLinear: return param_;
    }
    return 0.0;
}

bool Utility::bounded_above() const { return kind_ != Kind::Linear; }

bool Utility::attains_sup() const { return kind_ == Kind::CappedLinear; }

const char* family_name(Family f) {
    switch (f) {
        case Family::VaR: return "var";
        case Family::TVaR: return "tvar";
        case Family::Shortfall: return "shortfall";
        case Family::Scenario: return "scenario";
        case Family::Expectation: return "expectation";
    }
    return "?";
}

namespace {

void require_open_alpha(double alpha, const char* family) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << family << " level must lie in (0,1), got " << alpha;
        throw ValidationError(msg.str());
    }
}

} // namespace

AcceptanceSpec AcceptanceSpec::var(double alpha) {
    require_open_alpha(alpha, "VaR");
    return AcceptanceSpec(Family::VaR, alpha, std::nullopt, std::nullopt);
}

AcceptanceSpec AcceptanceSpec::tvar(double alpha) {
    require_open_alpha(alpha, "TVaR");
    return AcceptanceSpec(Family::TVaR, alpha, std::nullopt, std::nullopt);
}

AcceptanceSpec AcceptanceSpec::shortfall(Utility u, double alpha) {
    if (!std::isfinite(alpha)) throw ValidationError("shortfall level must be finite");
    if (alpha > u.sup_value())
        throw ValidationError("shortfall level exceeds sup u: the acceptance set would be empty");
    return AcceptanceSpec(Family::Shortfall, alpha, u, std::nullopt);
}

AcceptanceSpec AcceptanceSpec::scenario(EventMask event) {
    return AcceptanceSpec(Family::Scenario, 0.0, std::nullopt, std::move(event));
}

AcceptanceSpec AcceptanceSpec::expectation(double alpha) {
    if (!std::isfinite(alpha)) throw ValidationError("expectation level must be finite");
    return AcceptanceSpec(Family::Expectation, alpha, std::nullopt, std::nullopt);
}

const Utility& AcceptanceSpec::utility() const {
    if (!utility_) throw ValidationError("spec has no utility");
    return *utility_;
}

const EventMask& AcceptanceSpec::event() const {
    if (!event_) throw ValidationError("spec has no event");
    return *event_;
}

bool AcceptanceSpec::is_convex() const { return family_ != Family::VaR; }

bool AcceptanceSpec::is_coherent() const {
    switch (family_) {
        case Family::TVaR:
        case Family::Scenario: return true;
        case Family::Expectation: return alpha_ == 0.0;
        default: return false;
    }
}

bool AcceptanceSpec::is_conic() const {
    switch (family_) {
        case Family::VaR:
        case Family::TVaR:
        case Family::Scenario: return true;
        case Family::Expectation: return alpha_ == 0.0;
        case Family::Shortfall: return false;
    }
    return false;
}

std::string AcceptanceSpec::describe() const {
    std::ostringstream out;
    out << family_name(family_);
    if (family_ == Family::VaR || family_ == Family::TVaR || family_ == Family::Shortfall ||
        family_ == Family::Expectation)
        out << "(" << alpha_ << ")";
    return out.str();
}

double var_value(const ScenarioSpace& space, const Vec& x, double alpha) {
    require_open_alpha(alpha, "VaR");
    require_length(space, x, "position");
    // Merge equal payoff values into mass blocks, then pick the largest value
    // whose strictly-below mass still fits under alpha.
    std::vector<std::pair<double, double>> blocks; // (value, mass), ascending
    {
        std::vector<std::size_t> idx(x.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
        for (std::size_t i : idx) {
            if (!blocks.empty() && blocks.back().first == x[i])
                blocks.back().second += space.prob(i);
            else
                blocks.emplace_back(x[i], space.prob(i));
        }
    }
    double below = 0.0;
    double chosen = blocks.front().first; // mass below the smallest value is 0 <= alpha
    for (const auto& [value, mass] : blocks) {
        if (below <= alpha) chosen = value;
        else break;
        below += mass;
    }
    return -chosen;
}

double tvar_value(const ScenarioSpace& space, const Vec& x, double alpha) {
    require_open_alpha(alpha, "TVaR");
    require_length(space, x, "position");
    std::vector<std::size_t> idx(x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    double remaining = alpha;
    double acc = 0.0;
    for (std::size_t i : idx) {
        const double w = std::min(space.prob(i), remaining);
        acc += w * (-x[i]);
        remaining -= w;
        if (remaining <= 0.0) break;
    }
    return acc / alpha;
}

double expected_utility(const ScenarioSpace& space, const Vec& x, const Utility& u) {
    require_length(space, x, "position");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += space.prob(i) * u.evaluate(x[i]);
    return acc;
}

double expectation(const ScenarioSpace& space, const Vec& x) {
    require_length(space, x, "position");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += space.prob(i) * x[i];
    return acc;
}

bool is_acceptable(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x) {
    require_length(space, x, "position");
    switch (spec.family()) {
        case Family::VaR: {
            double mass = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i] < 0.0) mass += space.prob(i);
            return mass <= spec.alpha();
        }
        case Family::TVaR:
            return tvar_value(space, x, spec.alpha()) <= 0.0;
        case Family::Shortfall:
            return expected_utility(space, x, spec.utility()) >= spec.alpha();
        case Family::Scenario: {
            const EventMask& ev = spec.event();
            if (ev.size() > x.size()) throw ValidationError("event mask length mismatch");
            for (std::size_t i = 0; i < x.size(); ++i)
                if (ev.contains(i) && x[i] < 0.0) return false;
            return true;
        }
        case Family::Expectation:
            return expectation(space, x) >= spec.alpha();
    }
    return false;
}

bool interior_membership(const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x) {
    require_length(space, x, "position");
    switch (spec.family()) {
        case Family::VaR: {
            double mass = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i] <= 0.0) mass += space.prob(i);
            return mass <= spec.alpha();
        }
        case Family::TVaR:
            return tvar_value(space, x, spec.alpha()) < 0.0;
        case Family::Shortfall:
            return expected_utility(space, x, spec.utility()) > spec.alpha();
        case Family::Scenario: {
            const EventMask& ev = spec.event();
            if (ev.size() > x.size()) throw ValidationError("event mask length mismatch");
            for (std::size_t i = 0; i < x.size(); ++i)
                if (ev.contains(i) && !(x[i] > 0.0)) return false;
            return true;
        }
        case Family::Expectation:
            return expectation(space, x) > spec.alpha();
    }
    return false;
}

namespace {

void forbid_extra_keys(const json& j, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok) throw ValidationError("unexpected key '" + it.key() + "' in acceptance JSON");
    }
}

Utility utility_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ValidationError("utility JSON needs a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "exp") {
        forbid_extra_keys(j, {"kind", "a"});
        return Utility::exponential(j.at("a").get<double>());
    }
    if (kind == "linear") {
        forbid_extra_keys(j, {"kind"});
        return Utility::linear();
    }
    if (kind == "capped") {
        forbid_extra_keys(j, {"kind", "cap"});
        return Utility::capped_linear(j.at("cap").get<double>());
    }
    throw ValidationError("unknown utility kind '" + kind + "'");
}

} // namespace

AcceptanceSpec AcceptanceSpec::from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("acceptance JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type")) throw ValidationError("acceptance JSON needs a 'type'");
    const std::string type = j.at("type").get<std::string>();
    try {
        if (type == "var") {
            forbid_extra_keys(j, {"type", "alpha"});
            return var(j.at("alpha").get<double>());
        }
        if (type == "tvar") {
            forbid_extra_keys(j, {"type", "alpha"});
            return tvar(j.at("alpha").get<double>());
        }
        if (type == "shortfall") {
            forbid_extra_keys(j, {"type", "alpha", "utility"});
            return shortfall(utility_from_json(j.at("utility")), j.at("alpha").get<double>());
        }
        if (type == "scenario") {
            forbid_extra_keys(j, {"type", "event"});
            const auto& ev = j.at("event");
            if (!ev.is_array() || ev.empty()) throw ValidationError("scenario event must be a nonempty index array");
            std::size_t n = 0;
            std::vector<std::size_t> indices;
            for (const auto& e : ev) {
                const auto i = e.get<std::int64_t>();
                if (i < 0) throw ValidationError("scenario event indices must be nonnegative");
                indices.push_back(static_cast<std::size_t>(i));
                n = std::max(n, indices.back() + 1);
            }
            // Mask length is resolved against the space at use time; store the
            // tightest mask covering the indices.
            return scenario(EventMask::from_indices(n, indices));
        }
        if (type == "expectation") {
            forbid_extra_keys(j, {"type", "alpha"});
            return expectation(j.at("alpha").get<double>());
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("acceptance JSON: ") + e.what());
    }
    throw ValidationError("unknown acceptance type '" + type + "'");
}

std::string AcceptanceSpec::to_json() const {
    json j;
    j["type"] = family_name(family_);
    switch (family_) {
        case Family::VaR:
        case Family::TVaR:
        case Family::Expectation:
            j["alpha"] = alpha_;
            break;
        case Family::Shortfall: {
            j["alpha"] = alpha_;
            json u;
            switch (utility_->kind()) {
                case Utility::Kind::Exponential:
                    u["kind"] = "exp";
                    u["a"] = utility_->param();
                    break;
                case Utility::Kind::Linear:
                    u["kind"] = "linear";
                    break;
                case Utility::Kind::CappedLinear:
                    u["kind"] = "capped";
                    u["cap"] = utility_->param();
                    break;
            }
            j["utility"] = u;
            break;
        }
        case Family::Scenario: {
            std::vector<std::size_t> indices;
            for (std::size_t i = 0; i < event_->size(); ++i)
                if (event_->contains(i)) indices.push_back(i);
            j["event"] = indices;
            break;
        }
    }
    return j.dump();
}

} // namespace riskcap
