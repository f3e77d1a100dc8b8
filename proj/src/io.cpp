#include "evcalc/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "evcalc/errors.hpp"

namespace evcalc {

std::string format_decimal(double v) {
    if (v == 0.0) return "0";
    // Shortest fixed-notation decimal that parses back to the identical bits.
    // Subnormals can need over a thousand characters in fixed notation.
    char buf[1100];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    return std::string(buf, res.ptr);
}

std::string format_decimal_sig(double v, int sig_digits) {
    if (sig_digits <= 0 || sig_digits >= 17) return format_decimal(v);
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", sig_digits - 1, v);
    return format_decimal(std::strtod(buf, nullptr));
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string where(int line, std::string_view source) {
    if (line <= 0) return "subset argument";
    std::string out = "line " + std::to_string(line);
    if (!source.empty()) out += " of '" + std::string(source) + "'";
    return out;
}

double parse_value(std::string_view tok, int line, std::string_view source) {
    // Decimal with a required leading digit; an optional exponent part is
    // accepted on input (we never emit one ourselves).
    std::string_view body = tok;
    std::size_t i = 0;
    if (i < body.size() && (body[i] == '+' || body[i] == '-')) ++i;
    if (i >= body.size() || !std::isdigit(static_cast<unsigned char>(body[i]))) {
        fail(Errc::parse_error, where(line, source) +
                                    ": value must be a decimal with a leading digit, got '" +
                                    std::string(tok) + "'");
    }
    bool seen_dot = false;
    for (; i < body.size(); ++i) {
        if (body[i] == '.') {
            if (seen_dot || i + 1 >= body.size() ||
                !std::isdigit(static_cast<unsigned char>(body[i + 1]))) {
                fail(Errc::parse_error,
                     where(line, source) + ": malformed decimal '" + std::string(tok) + "'");
            }
            seen_dot = true;
        } else if (body[i] == 'e' || body[i] == 'E') {
            ++i;
            if (i < body.size() && (body[i] == '+' || body[i] == '-')) ++i;
            if (i >= body.size()) {
                fail(Errc::parse_error,
                     where(line, source) + ": malformed exponent in '" + std::string(tok) + "'");
            }
            for (; i < body.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(body[i]))) {
                    fail(Errc::parse_error,
                         where(line, source) + ": malformed exponent in '" + std::string(tok) + "'");
                }
            }
            break;
        } else if (!std::isdigit(static_cast<unsigned char>(body[i]))) {
            fail(Errc::parse_error, where(line, source) + ": unexpected character in value '" +
                                        std::string(tok) + "'");
        }
    }
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        fail(Errc::parse_error,
             where(line, source) + ": cannot parse value '" + std::string(tok) + "'");
    }
    return v;
}

SubsetIndex parse_subset_inner(const Frame& frame, std::string_view inner, int line,
                               std::string_view source) {
    inner = trim(inner);
    if (inner.empty()) return kEmptySet;
    SubsetIndex subset = 0;
    std::size_t start = 0;
    while (start <= inner.size()) {
        const std::size_t comma = inner.find(',', start);
        const std::string_view tok =
            trim(inner.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (tok.empty()) {
            fail(Errc::parse_error, where(line, source) + ": empty label in subset");
        }
        const int idx = frame.index_of(tok);
        if (idx < 0) {
            fail(Errc::unknown_label,
                 where(line, source) + ": unknown label '" + std::string(tok) + "'");
        }
        const SubsetIndex bit = SubsetIndex{1} << idx;
        if (subset & bit) {
            fail(Errc::parse_error,
                 where(line, source) + ": label '" + std::string(tok) + "' listed twice");
        }
        subset |= bit;
        if (comma == std::string_view::npos) break;
        start = comma + 1;
        if (start == inner.size()) {
            fail(Errc::parse_error, where(line, source) + ": empty label in subset");
        }
    }
    return subset;
}

EvidenceDoc parse_doc(std::string_view text, std::string_view source) {
    FramePtr frame;
    std::optional<ProductFrame> product;
    std::vector<Variable> variables;
    std::vector<double> values;
    std::vector<bool> assigned;
    bool masses_started = false;
    int line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        const std::string_view lv = trim(raw);
        if (lv.empty() || lv.front() == '#') continue;

        if (lv.starts_with("frame:")) {
            if (frame) fail(Errc::parse_error, where(line_no, source) + ": duplicate frame line");
            const auto labels = split_ws(lv.substr(6));
            if (labels.empty()) {
                fail(Errc::parse_error, where(line_no, source) + ": frame line lists no labels");
            }
            std::vector<std::string> owned(labels.begin(), labels.end());
            try {
                frame = Frame::make(std::move(owned));
            } catch (const Error& e) {
                fail(Errc::parse_error, where(line_no, source) + ": " + e.what());
            }
            values.assign(frame->subset_count(), 0.0);
            assigned.assign(frame->subset_count(), false);
            continue;
        }
        if (!frame) {
            fail(Errc::parse_error,
                 where(line_no, source) + ": expected a 'frame:' line before anything else");
        }
        if (lv.starts_with("var ") || lv.starts_with("var\t")) {
            if (masses_started) {
                fail(Errc::parse_error,
                     where(line_no, source) + ": 'var' lines must precede mass lines");
            }
            const std::string_view rest = trim(lv.substr(4));
            const std::size_t colon = rest.find(':');
            if (colon == std::string_view::npos) {
                fail(Errc::parse_error, where(line_no, source) + ": expected 'var <name>: <values>'");
            }
            Variable v;
            v.name = std::string(trim(rest.substr(0, colon)));
            for (std::string_view d : split_ws(rest.substr(colon + 1))) v.domain.emplace_back(d);
            if (v.name.empty() || v.domain.empty()) {
                fail(Errc::parse_error, where(line_no, source) + ": expected 'var <name>: <values>'");
            }
            variables.push_back(std::move(v));
            continue;
        }
        if (lv.starts_with("m ") || lv.starts_with("m\t") || lv.starts_with("m{")) {
            if (!masses_started && !variables.empty()) {
                // Close variable declarations: they must reproduce the frame.
                ProductFrame pf(variables);
                if (!(*pf.frame() == *frame)) {
                    fail(Errc::parse_error,
                         where(line_no, source) +
                             ": variable declarations do not match the frame labels");
                }
                product.emplace(std::move(pf));
            }
            masses_started = true;
            const std::size_t open = lv.find('{');
            const std::size_t close = lv.find('}', open == std::string_view::npos ? 0 : open);
            if (open == std::string_view::npos || close == std::string_view::npos ||
                !trim(lv.substr(1, open - 1)).empty()) {
                fail(Errc::parse_error,
                     where(line_no, source) + ": expected 'm {labels} value'");
            }
            const SubsetIndex subset =
                parse_subset_inner(*frame, lv.substr(open + 1, close - open - 1), line_no, source);
            const auto toks = split_ws(lv.substr(close + 1));
            if (toks.size() != 1) {
                fail(Errc::parse_error,
                     where(line_no, source) + ": expected exactly one value after the subset");
            }
            if (assigned[subset]) {
                fail(Errc::duplicate_subset, where(line_no, source) + ": subset " +
                                                 frame->format_subset(subset) +
                                                 " assigned twice");
            }
            assigned[subset] = true;
            values[subset] = parse_value(toks[0], line_no, source);
            continue;
        }
        fail(Errc::parse_error, where(line_no, source) + ": unrecognized line '" +
                                    std::string(lv.substr(0, 40)) + "'");
    }
    if (!frame) {
        fail(Errc::parse_error, source.empty()
                                    ? std::string("evidence text declares no frame")
                                    : "'" + std::string(source) + "' declares no frame");
    }
    if (!masses_started && !variables.empty()) {
        ProductFrame pf(variables);
        if (!(*pf.frame() == *frame)) {
            fail(Errc::parse_error, "variable declarations do not match the frame labels");
        }
        product.emplace(std::move(pf));
    }
    return EvidenceDoc{validate_bpa(std::move(values), frame), std::move(product)};
}

}  // namespace

EvidenceDoc parse_evidence_doc(std::string_view text) { return parse_doc(text, ""); }

MassFunction parse_evidence(std::string_view text) { return parse_doc(text, "").mass; }

EvidenceDoc load_evidence_doc(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(Errc::parse_error, "cannot open '" + file.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_doc(buf.str(), file.string());
}

MassFunction load_evidence(const std::filesystem::path& file) {
    return load_evidence_doc(file).mass;
}

std::string render_evidence(const MassFunction& m, const ProductFrame* product) {
    if (product != nullptr && !same_frame(product->frame(), m.frame())) {
        fail(Errc::frame_mismatch, "product frame does not match the mass function");
    }
    std::string out = "frame:";
    for (const std::string& label : m.frame()->labels()) {
        out += ' ';
        out += label;
    }
    out += '\n';
    if (product != nullptr) {
        for (const Variable& v : product->variables()) {
            out += "var " + v.name + ":";
            for (const std::string& d : v.domain) {
                out += ' ';
                out += d;
            }
            out += '\n';
        }
    }
    for (SubsetIndex s : canonical_subsets(m.frame()->size())) {
        if (m[s] == 0.0) continue;
        out += "m " + m.frame()->format_subset(s) + " " + format_decimal(m[s]) + "\n";
    }
    return out;
}

std::string render_value_table(const FramePtr& frame, std::span<const double> values,
                               int precision, bool skip_zeros) {
    if (!frame || values.size() != frame->subset_count()) {
        fail(Errc::dimension_mismatch, "value table does not match the frame");
    }
    std::string out;
    for (SubsetIndex s : canonical_subsets(frame->size())) {
        if (skip_zeros && values[s] == 0.0) continue;
        out += format_decimal_sig(values[s], precision == 0 ? 17 : precision);
        out += ' ';
        out += frame->format_subset(s);
        out += '\n';
    }
    return out;
}

std::string render_table(const MassFunction& m, int precision, bool skip_zeros) {
    return render_value_table(m.frame(), m.values(), precision, skip_zeros);
}

SubsetIndex parse_subset_text(const Frame& frame, std::string_view text) {
    const std::string_view t = trim(text);
    if (t.size() < 2 || t.front() != '{' || t.back() != '}') {
        fail(Errc::parse_error, "expected a subset like '{red,blue}', got '" + std::string(text) +
                                    "'");
    }
    return parse_subset_inner(frame, t.substr(1, t.size() - 2), 0, "");
}

}  // namespace evcalc
