#include "cwmix/timegrid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cwmix {

namespace {

struct ExprParser {
    const std::string& text;
    size_t pos = 0;
    double n_value;
    double t_n_value;  // NaN when unavailable (beta >= 1)

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool try_literal(const char* lit) {
        skip_ws();
        size_t len = 0;
        while (lit[len]) ++len;
        if (text.compare(pos, len, lit) == 0) {
            pos += len;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("time grid: " + why + " in '" + text + "'");
    }

    double parse_symbol_value() {
        // Order matters: "t_n" before "n".
        if (try_literal("t_n")) {
            if (std::isnan(t_n_value)) fail("t_n requires beta < 1");
            return t_n_value;
        }
        if (try_literal("n")) return n_value;
        fail("expected number or symbol");
    }

    double parse_term() {
        skip_ws();
        double coef = 1.0;
        bool have_number = false;
        if (pos < text.size() &&
            (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
            size_t used = 0;
            coef = std::stod(text.substr(pos), &used);
            if (used == 0) fail("bad number");
            pos += used;
            have_number = true;
        }
        skip_ws();
        if (pos < text.size() && (text[pos] == 't' || text[pos] == 'n'))
            return coef * parse_symbol_value();
        if (!have_number) fail("expected number or symbol");
        return coef;
    }

    double parse_expr() {
        skip_ws();
        double sign = 1.0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            sign = text[pos] == '-' ? -1.0 : 1.0;
            ++pos;
        }
        double acc = sign * parse_term();
        while (true) {
            skip_ws();
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
                const double s = text[pos] == '-' ? -1.0 : 1.0;
                ++pos;
                acc += s * parse_term();
            } else {
                break;
            }
        }
        return acc;
    }

    double parse_full_expr() {
        const double v = parse_expr();
        skip_ws();
        if (pos != text.size()) fail("trailing characters");
        return v;
    }
};

double eval_expr(const std::string& piece, double n_value, double t_n_value) {
    ExprParser p{piece, 0, n_value, t_n_value};
    return p.parse_full_expr();
}

std::int64_t to_step(double v) {
    return std::max<std::int64_t>(0, std::llround(v));
}

}  // namespace

std::vector<std::int64_t> parse_time_grid(const std::string& text, const ModelParams& p) {
    p.validate();
    const double n_value = p.n;
    const double t_n_value =
        p.beta < 1.0 ? cutoff_center(p) : std::nan("");

    std::vector<std::int64_t> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        std::string piece = text.substr(start, comma - start);
        start = comma + 1;
        if (piece.find_first_not_of(" \t") == std::string::npos) {
            if (start > text.size()) break;
            throw std::invalid_argument("time grid: empty element in '" + text + "'");
        }

        const size_t dots = piece.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_step(eval_expr(piece, n_value, t_n_value)));
        } else {
            std::string lo_text = piece.substr(0, dots);
            std::string rest = piece.substr(dots + 2);
            double step = 1.0;
            const size_t colon = rest.find(':');
            if (colon != std::string::npos) {
                std::string step_text = rest.substr(colon + 1);
                const size_t kw = step_text.find("step");
                if (kw == std::string::npos)
                    throw std::invalid_argument("time grid: expected ':step' in '" + piece + "'");
                step = eval_expr(step_text.substr(kw + 4), n_value, t_n_value);
                rest = rest.substr(0, colon);
            }
            const double lo = eval_expr(lo_text, n_value, t_n_value);
            const double hi = eval_expr(rest, n_value, t_n_value);
            if (!(step > 0)) throw std::invalid_argument("time grid: step must be positive");
            if (lo > hi) throw std::invalid_argument("time grid: range start exceeds end");
            if ((hi - lo) / step > 2e6)
                throw std::invalid_argument("time grid: range generates too many points");
            for (double v = lo; v <= hi + 1e-9 * std::max(1.0, std::fabs(hi)); v += step)
                out.push_back(to_step(v));
        }
        if (comma == text.size()) break;
    }
    if (out.empty()) throw std::invalid_argument("time grid: empty specification");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace cwmix
