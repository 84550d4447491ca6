#include "textio.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace royden::textio {

namespace {

double parse_real(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("trailing characters in number: '" + s + "'");
    return v;
}

} // namespace

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    if (s.back() != 'i' && s.back() != 'I') return cplx(parse_real(s), 0.0);

    // pure imaginary or a+bi: find the sign splitting real and imaginary
    // parts, skipping any exponent sign
    std::string body = s.substr(0, s.size() - 1);
    size_t split = std::string::npos;
    for (size_t i = body.size(); i-- > 1;) {
        char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        if (body.empty() || body == "+") return cplx(0.0, 1.0);
        if (body == "-") return cplx(0.0, -1.0);
        return cplx(0.0, parse_real(body));
    }
    std::string re = body.substr(0, split);
    std::string im = body.substr(split);
    if (im == "+") return cplx(parse_real(re), 1.0);
    if (im == "-") return cplx(parse_real(re), -1.0);
    return cplx(parse_real(re), parse_real(im));
}

std::vector<cplx> parse_coeff_list(const std::string& text) {
    std::vector<cplx> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
    if (out.empty()) throw std::invalid_argument("empty coefficient list");
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string samples_to_csv(const std::vector<SphereSample>& samples,
                           const std::vector<SweepFailure>& failures) {
    std::string out = "theta,r,d1,d2,d3,near_singular\n";
    for (const auto& s : samples) {
        out += format_double(s.theta);
        out += ',';
        out += format_double(s.r);
        out += ',';
        out += format_double(s.d1);
        out += ',';
        out += format_double(s.d2);
        out += ',';
        out += format_double(s.d3);
        out += ',';
        out += s.near_singular ? '1' : '0';
        out += '\n';
    }
    for (const auto& f : failures) {
        out += "# failed theta=" + format_double(f.theta) + " stage=" + f.stage + " message=" +
               f.message + "\n";
    }
    return out;
}

std::string sweep_to_csv(const SweepResult& res) {
    return samples_to_csv(res.samples, res.failures);
}

std::vector<SphereSample> samples_from_csv(const std::string& csv) {
    std::vector<SphereSample> out;
    std::stringstream ss(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("theta,r,d1,d2,d3,near_singular", 0) != 0)
                throw std::invalid_argument("unexpected CSV header: '" + line + "'");
            header_seen = true;
            continue;
        }
        std::stringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            throw std::invalid_argument("CSV row needs 6 fields: '" + line + "'");
        SphereSample s;
        s.theta = parse_real(fields[0]);
        s.r = parse_real(fields[1]);
        s.d1 = parse_real(fields[2]);
        s.d2 = parse_real(fields[3]);
        s.d3 = parse_real(fields[4]);
        s.has_derivatives = s.d1 != 0.0 || s.d2 != 0.0 || s.d3 != 0.0;
        s.near_singular = fields[5] == "1" || fields[5] == "true";
        out.push_back(s);
    }
    if (!header_seen) throw std::invalid_argument("CSV is missing the header row");
    return out;
}

} // namespace royden::textio
