#include "xlab/measure_file.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace xlab {
namespace {

const std::set<std::string> kKeys = {"support.kind", "support.params", "weight.A",  "weight.B",
                                     "weight.jump_param", "weight.w0",  "weight.reference", "eval.z0"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
        s = s.substr(1, s.size() - 2);
    return trim(s);
}

std::vector<double> numbers(const std::string& key, const std::string& text) {
    std::string s = text;
    for (char& c : s)
        if (c == ',' || c == ';') c = ' ';
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || !std::isfinite(v))
            throw Error(ErrorKind::Input, key + ": '" + tok + "' is not a finite number");
        out.push_back(v);
    }
    return out;
}

double positive(const MeasureFile& f, const std::string& key, double fallback) {
    const auto it = f.entries.find(key);
    if (it == f.entries.end()) return fallback;
    const auto v = numbers(key, it->second);
    if (v.size() != 1 || !(v[0] > 0.0)) throw Error(ErrorKind::Input, key + " must be one positive number");
    return v[0];
}

}  // namespace

Complex parse_complex(const std::string& text) {
    const auto v = numbers("point", text);
    if (v.size() != 2) throw Error(ErrorKind::Input, "expected a point 're,im', got '" + text + "'");
    return {v[0], v[1]};
}

MeasureFile parse_measure_text(const std::string& text, const std::string& origin) {
    MeasureFile f;
    f.origin = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) throw Error(ErrorKind::Input, where + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (!kKeys.count(key)) throw Error(ErrorKind::Input, where + "unknown key '" + key + "'");
        if (f.entries.count(key)) throw Error(ErrorKind::Input, where + "duplicate key '" + key + "'");
        if (value.empty()) throw Error(ErrorKind::Input, where + "empty value for '" + key + "'");
        f.entries[key] = value;
    }
    return f;
}

MeasureFile read_measure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Input, "cannot open measure file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_measure_text(ss.str(), path);
}

MeasureSpec build_measure(const MeasureFile& f, const std::string& z0_override) {
    auto get = [&](const std::string& key) -> const std::string& {
        const auto it = f.entries.find(key);
        if (it == f.entries.end()) throw Error(ErrorKind::Input, f.origin + ": missing key '" + key + "'");
        return it->second;
    };
    const std::string kind = get("support.kind");
    const auto params = numbers("support.params", get("support.params"));

    std::optional<SupportSpec> support;
    std::string default_jump = "0";
    if (kind == "circle") {
        if (params.size() == 1) support = SupportSpec::circle({0.0, 0.0}, params[0]);
        else if (params.size() == 3) support = SupportSpec::circle({params[0], params[1]}, params[2]);
        else throw Error(ErrorKind::Input, "support.params for a circle: r, or cx, cy, r");
        default_jump = "pi/2";
    } else if (kind == "interval") {
        if (params.size() != 2) throw Error(ErrorKind::Input, "support.params for an interval: a, b");
        support = SupportSpec::interval(params[0], params[1]);
        default_jump = std::to_string(0.5 * (params[0] + params[1]));
    } else if (kind == "ellipse") {
        if (params.size() != 2 && params.size() != 4 && params.size() != 5)
            throw Error(ErrorKind::Input, "support.params for an ellipse: a, b [, cx, cy [, rotation]]");
        const Complex c = params.size() >= 4 ? Complex(params[2], params[3]) : Complex();
        support = SupportSpec::ellipse(params[0], params[1], c, params.size() == 5 ? params[4] : 0.0);
    } else if (kind == "lemniscate") {
        if (params.size() < 4 || params.size() % 2 != 0)
            throw Error(ErrorKind::Input, "support.params for a lemniscate: re, im pairs of at least two coefficients");
        std::vector<Complex> c;
        for (std::size_t i = 0; i < params.size(); i += 2) c.emplace_back(params[i], params[i + 1]);
        support = SupportSpec::lemniscate(ComplexPolynomial(std::move(c)));
        default_jump = "pi/2";
    } else {
        throw Error(ErrorKind::Input, "support.kind must be circle, interval, ellipse or lemniscate (got '" + kind + "')");
    }

    JumpWeight jump;
    jump.A = positive(f, "weight.A", 1.0);
    jump.B = positive(f, "weight.B", 1.0);
    const auto jp = f.entries.find("weight.jump_param");
    jump.jump_param = ParamValue::parse(jp == f.entries.end() ? default_jump : jp->second);

    SmoothFactor w0;
    if (const auto it = f.entries.find("weight.w0"); it != f.entries.end()) {
        const auto c = numbers("weight.w0", it->second);
        if (c.empty()) throw Error(ErrorKind::Input, "weight.w0 needs at least one coefficient");
        w0 = c.size() == 1 ? SmoothFactor::constant(c[0]) : SmoothFactor::polynomial(c);
    }

    Reference ref = Reference::ArcLength;
    if (const auto it = f.entries.find("weight.reference"); it != f.entries.end()) {
        if (it->second == "chebyshev") ref = Reference::Chebyshev;
        else if (it->second != "arclength")
            throw Error(ErrorKind::Input, "weight.reference must be arclength or chebyshev");
    }

    std::string z0_text = z0_override;
    if (z0_text.empty()) {
        const auto it = f.entries.find("eval.z0");
        z0_text = it == f.entries.end() ? "auto-jump" : it->second;
    }
    std::optional<Complex> z0;
    if (z0_text != "auto-jump") z0 = parse_complex(z0_text);
    return MeasureSpec(*support, jump, w0, ref, z0);
}

}  // namespace xlab
