#include "riskcap/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace riskcap {

namespace {

double sum_exact(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

} // namespace

ScenarioSpace::ScenarioSpace(Vec probabilities) : p_(std::move(probabilities)) {
    if (p_.empty()) throw ValidationError("scenario space needs at least one outcome");
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_[i])) throw ValidationError("non-finite probability at outcome " + std::to_string(i + 1));
        if (p_[i] <= 0.0) throw ValidationError("zero-probability outcome " + std::to_string(i + 1));
    }
    const double s = sum_exact(p_);
    if (std::abs(s - 1.0) > kSumTolerance) {
        std::ostringstream msg;
        msg << "probabilities sum to " << s;
        throw ValidationError(msg.str());
    }
}

ScenarioSpace renormalize(const Vec& probabilities) {
    const double s = sum_exact(probabilities);
    if (std::abs(s - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "probability sum " << s << " deviates by more than 1e-6; refusing to renormalize";
        throw ValidationError(msg.str());
    }
    Vec scaled = probabilities;
    for (double& p : scaled) p /= s;
    return ScenarioSpace(std::move(scaled));
}

EligibleAsset::EligibleAsset(double price_, Vec payoff_) : price(price_), payoff(std::move(payoff_)) {
    if (!(price > 0.0) || !std::isfinite(price)) throw ValidationError("asset price must be strictly positive");
    bool any_positive = false;
    for (std::size_t i = 0; i < payoff.size(); ++i) {
        if (!std::isfinite(payoff[i])) throw ValidationError("non-finite payoff at outcome " + std::to_string(i + 1));
        if (payoff[i] < 0.0) throw ValidationError("negative payoff at outcome " + std::to_string(i + 1));
        if (payoff[i] > 0.0) any_positive = true;
    }
    if (payoff.empty() || !any_positive) throw ValidationError("asset payoff must be nonzero");
}

double EligibleAsset::min_positive_payoff() const {
    double m = 0.0;
    bool seen = false;
    for (double s : payoff) {
        if (s > 0.0 && (!seen || s < m)) {
            m = s;
            seen = true;
        }
    }
    return seen ? m : 0.0;
}

double EligibleAsset::min_payoff() const {
    double m = payoff[0];
    for (double s : payoff) m = std::min(m, s);
    return m;
}

EventMask::EventMask(std::vector<bool> m) : mask(std::move(m)) {
    bool any = false;
    for (bool b : mask) any = any || b;
    if (mask.empty() || !any) throw ValidationError("event mask selects no outcome");
}

EventMask EventMask::from_indices(std::size_t n, const std::vector<std::size_t>& indices) {
    std::vector<bool> m(n, false);
    for (std::size_t i : indices) {
        if (i >= n) throw ValidationError("event index " + std::to_string(i) + " out of range");
        m[i] = true;
    }
    return EventMask(std::move(m));
}

void require_length(const ScenarioSpace& space, const Vec& x, const char* what) {
    if (x.size() != space.size()) {
        std::ostringstream msg;
        msg << what << " has length " << x.size() << ", scenario space has " << space.size();
        throw ValidationError(msg.str());
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

double parse_double(const std::string& field, std::size_t row, const std::string& origin) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        std::ostringstream msg;
        msg << origin << ": row " << row << ": cannot parse '" << field << "' as a number";
        throw ParseError(msg.str());
    }
    return v;
}

} // namespace

LoadedScenarios load_scenarios(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(origin + ": empty file");
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "prob" || header[1] != "x" || header[2] != "s")
        throw ParseError(origin + ": header must start with 'prob,x,s'");
    for (std::size_t k = 3; k < header.size(); ++k) {
        const std::string expected = "x" + std::to_string(k - 1);
        if (header[k] != expected)
            throw ParseError(origin + ": unexpected column '" + header[k] + "' (expected '" + expected + "')");
    }
    const std::size_t n_extra = header.size() - 3;

    Vec probs;
    Vec x0;
    Vec payoff;
    std::vector<Vec> extras(n_extra);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << origin << ": row " << row << ": expected " << header.size() << " fields, got "
                << fields.size();
            throw ParseError(msg.str());
        }
        probs.push_back(parse_double(fields[0], row, origin));
        x0.push_back(parse_double(fields[1], row, origin));
        payoff.push_back(parse_double(fields[2], row, origin));
        for (std::size_t k = 0; k < n_extra; ++k)
            extras[k].push_back(parse_double(fields[3 + k], row, origin));
    }
    if (probs.empty()) throw ParseError(origin + ": no data rows");

    ScenarioSpace space(std::move(probs));
    std::vector<Vec> positions;
    positions.push_back(std::move(x0));
    for (auto& e : extras) positions.push_back(std::move(e));
    for (double s : payoff)
        if (s < 0.0) throw ValidationError(origin + ": negative payoff entry");
    return LoadedScenarios{std::move(space), std::move(positions), std::move(payoff)};
}

LoadedScenarios load_scenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    return load_scenarios(in, path);
}

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void save_scenarios(std::ostream& out, const ScenarioSpace& space, const std::vector<Vec>& positions,
                    const Vec& payoff) {
    require_length(space, payoff, "payoff");
    if (positions.empty()) throw ValidationError("need at least one position column");
    for (const auto& x : positions) require_length(space, x, "position");

    out << "prob,x,s";
    for (std::size_t k = 1; k < positions.size(); ++k) out << ",x" << (k + 1);
    out << "\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
        out << fmt17(space.prob(i)) << ',' << fmt17(positions[0][i]) << ',' << fmt17(payoff[i]);
        for (std::size_t k = 1; k < positions.size(); ++k) out << ',' << fmt17(positions[k][i]);
        out << "\n";
    }
}

void save_scenarios(const std::string& path, const ScenarioSpace& space,
                    const std::vector<Vec>& positions, const Vec& payoff) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write scenario file '" + path + "'");
    save_scenarios(out, space, positions, payoff);
}

} // namespace riskcap
