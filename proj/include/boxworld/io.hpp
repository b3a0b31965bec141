#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include <json.hpp>

#include "boxworld/box.hpp"
#include "boxworld/functional.hpp"
#include "boxworld/swap.hpp"
#include "boxworld/wirings.hpp"

namespace boxworld {

namespace detail {

struct ScalarParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() { return pos < text.size() ? text[pos] : '\0'; }

    [[noreturn]] void fail(const std::string& what) {
        throw parse_error(what + " at position " + std::to_string(pos) + " in '" +
                          std::string(text) + "'");
    }

    Int parse_int() {
        skip_ws();
        std::size_t start = pos;
        if (peek() == '-' || peek() == '+') ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) fail("expected integer");
        return Int(std::string(text.substr(start, pos - start)));
    }

    // term := rational [r-part] | r-part | 'BQ', with an optional sign
    ExactScalar parse_term() {
        skip_ws();
        int sign = 1;
        while (peek() == '+' || peek() == '-') {
            if (text[pos] == '-') sign = -sign;
            ++pos;
            skip_ws();
        }
        if (peek() == 'B') {
            if (text.substr(pos, 2) != "BQ") fail("expected 'BQ'");
            pos += 2;
            return sign > 0 ? ExactScalar::tsirelson_bound() : -ExactScalar::tsirelson_bound();
        }
        Rational coeff(1);
        bool have_coeff = false;
        if (peek() != 'r') {
            Int num = parse_int();
            Int den = 1;
            skip_ws();
            if (peek() == '/') {
                ++pos;
                den = parse_int();
                if (den.is_zero()) fail("zero denominator");
                if (den < 0) {
                    num = -num;
                    den = -den;
                }
            }
            coeff = Rational(num, den);
            have_coeff = true;
            skip_ws();
        }
        int power = 0;
        if (peek() == 'r') {
            ++pos;
            power = 1;
            if (peek() == '^') {
                ++pos;
                Int p = parse_int();
                if (p < 1 || p > 3) fail("r power must be 1..3");
                power = p.convert_to<int>();
            }
        } else if (!have_coeff) {
            fail("expected term");
        }
        if (sign < 0) coeff = -coeff;
        ExactScalar out;
        Rational c[4] = {};
        c[power] = coeff;
        return ExactScalar(c[0], c[1], c[2], c[3]);
    }

    ExactScalar parse() {
        ExactScalar total = parse_term();
        while (!done()) {
            skip_ws();
            if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
            total += parse_term();
        }
        return total;
    }
};

}  // namespace detail

// Parses the exact ASCII scalar form plus the CLI tokens: rational literals
// "p/q", powers of r = 2^(1/4) ("r", "r^2", "r^3") with rational
// coefficients, and "BQ" for Tsirelson's bound, combined with + and -.
inline ExactScalar parse_scalar(std::string_view text) {
    detail::ScalarParser p{text};
    ExactScalar v = p.parse();
    return v;
}

inline std::string to_string(BoxLabel::Kind kind) {
    using Kind = BoxLabel::Kind;
    switch (kind) {
        case Kind::Deterministic: return "deterministic";
        case Kind::PrVariant: return "pr-variant";
        case Kind::AntiPr: return "anti-pr";
        case Kind::Isotropic: return "isotropic";
        case Kind::NoisyLocal: return "noisy-local";
        case Kind::MaximallyMixed: return "maximally-mixed";
        case Kind::Custom: return "custom";
    }
    return "?";
}

inline nlohmann::json box_to_json(const BipartiteBox& box, const BoxLabel* label = nullptr) {
    nlohmann::json j;
    if (label) {
        j["kind"] = to_string(label->kind);
        nlohmann::json params = nlohmann::json::object();
        using Kind = BoxLabel::Kind;
        switch (label->kind) {
            case Kind::Deterministic:
                params = {{"alpha", label->bits[0]},
                          {"beta", label->bits[1]},
                          {"gamma", label->bits[2]},
                          {"delta", label->bits[3]}};
                break;
            case Kind::PrVariant:
                params = {{"alpha", label->bits[0]},
                          {"beta", label->bits[1]},
                          {"gamma", label->bits[2]}};
                break;
            case Kind::NoisyLocal:
                params = {{"alpha", label->bits[0]},
                          {"beta", label->bits[1]},
                          {"gamma", label->bits[2]},
                          {"delta", label->bits[3]}};
                break;
            default:
                break;
        }
        if (label->xi) params["xi"] = label->xi->to_string();
        j["params"] = params;
    }
    nlohmann::json table = nlohmann::json::array();
    for (const auto& e : box.p) table.push_back(e.to_string());
    j["table"] = table;
    return j;
}

inline BipartiteBox box_from_json(const nlohmann::json& j) {
    if (!j.contains("table") || !j["table"].is_array() || j["table"].size() != 16)
        throw parse_error("box JSON needs a 16-entry 'table' array");
    BipartiteBox box;
    for (std::size_t i = 0; i < 16; ++i)
        box.p[i] = parse_scalar(j["table"][i].get<std::string>());
    return box;
}

inline nlohmann::json functional_to_json(const LinearFunctional& f) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : f.w) coeffs.push_back(c.to_string());
    return {{"coeffs", coeffs}, {"offset", f.offset.to_string()}};
}

inline LinearFunctional functional_from_json(const nlohmann::json& j) {
    if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].size() != 16)
        throw parse_error("functional JSON needs a 16-entry 'coeffs' array");
    LinearFunctional f;
    for (std::size_t i = 0; i < 16; ++i)
        f.w[i] = parse_scalar(j["coeffs"][i].get<std::string>());
    if (j.contains("offset")) f.offset = parse_scalar(j["offset"].get<std::string>());
    return f;
}

inline nlohmann::json outcome_to_json(const SwapOutcome& out) {
    return {{"p_success", out.p_success.to_string()},
            {"ch_success", out.ch_success.to_string()},
            {"ch_failure", out.ch_failure.to_string()},
            {"success_box", box_to_json(out.success_box)},
            {"failure_box", box_to_json(out.failure_box)}};
}

inline nlohmann::json wiring_to_json(const Wiring& w) {
    return {{"kind", to_string(w.kind)},
            {"provenance", w.provenance},
            {"functional", functional_to_json(w.functional)}};
}

}  // namespace boxworld
