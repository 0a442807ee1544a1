#include "arae/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace arae {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const std::string& path, size_t lineno) {
    double v = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::ParseError,
                    path + ":" + std::to_string(lineno) + ": bad numeric field '" + s + "'");
    }
    return v;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    }
    return in;
}

void write_or_throw(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::ParseError, "cannot write " + path);
    }
    out << content;
    if (!out) {
        throw Error(ErrorCode::ParseError, "write failed for " + path);
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    // round-trip exact; prefer the shorter %.16g form when it reparses equal
    std::snprintf(buf, sizeof(buf), "%.16g", v);
    double back = 0;
    std::from_chars(buf, buf + std::string_view(buf).size(), back);
    if (back != v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
    }
    return buf;
}

std::vector<TrajectorySample> read_trajectory_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::ParseError, path + ": empty file");
    }
    const auto header = split_line(line);
    const std::vector<std::string> base = {"t", "q1", "q2", "q3", "q4", "q5"};
    const std::vector<std::string> truth = {"h1", "h2", "h3", "h4"};
    const std::vector<std::string> shoulder = {"sx", "sy", "sz"};

    const bool has_truth = header.size() >= 10;
    const bool has_shoulder = header.size() == 13;
    if (header.size() != 6 && header.size() != 10 && header.size() != 13) {
        throw Error(ErrorCode::ParseError, path + ": expected 6, 10 or 13 columns");
    }
    std::vector<std::string> expected = base;
    if (has_truth) expected.insert(expected.end(), truth.begin(), truth.end());
    if (has_shoulder) expected.insert(expected.end(), shoulder.begin(), shoulder.end());
    for (size_t i = 0; i < expected.size(); ++i) {
        if (header[i] != expected[i]) {
            throw Error(ErrorCode::ParseError,
                        path + ": bad header column '" + header[i] + "', expected '" +
                            expected[i] + "'");
        }
    }

    std::vector<TrajectorySample> samples;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::ParseError,
                        path + ":" + std::to_string(lineno) + ": wrong field count");
        }
        TrajectorySample s;
        s.t = parse_double(fields[0], path, lineno);
        s.q = {parse_double(fields[1], path, lineno), parse_double(fields[2], path, lineno),
               parse_double(fields[3], path, lineno), parse_double(fields[4], path, lineno),
               parse_double(fields[5], path, lineno)};
        if (has_truth) {
            s.truth_h = HumanJointAngles{
                parse_double(fields[6], path, lineno), parse_double(fields[7], path, lineno),
                parse_double(fields[8], path, lineno), parse_double(fields[9], path, lineno)};
        }
        if (has_shoulder) {
            s.truth_shoulder_p =
                Vec3(parse_double(fields[10], path, lineno), parse_double(fields[11], path, lineno),
                     parse_double(fields[12], path, lineno));
        }
        if (!samples.empty() && !(s.t > samples.back().t)) {
            throw Error(ErrorCode::ParseError,
                        path + ":" + std::to_string(lineno) + ": time not strictly increasing");
        }
        samples.push_back(s);
    }
    return samples;
}

void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& samples) {
    const bool has_truth = !samples.empty() && samples.front().truth_h.has_value();
    const bool has_shoulder = !samples.empty() && samples.front().truth_shoulder_p.has_value();

    std::ostringstream out;
    out << "t,q1,q2,q3,q4,q5";
    if (has_truth) out << ",h1,h2,h3,h4";
    if (has_shoulder) out << ",sx,sy,sz";
    out << "\n";
    for (const auto& s : samples) {
        out << format_double(s.t);
        for (double q : s.q.as_array()) out << ',' << format_double(q);
        if (has_truth) {
            if (!s.truth_h) {
                throw Error(ErrorCode::ParseError, "trajectory: inconsistent ground-truth columns");
            }
            for (double h : s.truth_h->as_array()) out << ',' << format_double(h);
        }
        if (has_shoulder) {
            if (!s.truth_shoulder_p) {
                throw Error(ErrorCode::ParseError, "trajectory: inconsistent shoulder columns");
            }
            for (int i = 0; i < 3; ++i) out << ',' << format_double((*s.truth_shoulder_p)(i));
        }
        out << "\n";
    }
    write_or_throw(path, out.str());
}

EmgRecord read_emg_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::ParseError, path + ": empty file");
    }
    const auto header = split_line(line);
    const std::vector<std::string> expected = {"t", "pm", "dm", "bb", "tb"};
    if (header.size() != 5) {
        throw Error(ErrorCode::ParseError, path + ": expected header t,pm,dm,bb,tb");
    }
    for (size_t i = 0; i < 5; ++i) {
        if (header[i] != expected[i]) {
            throw Error(ErrorCode::ParseError, path + ": bad EMG header column '" + header[i] + "'");
        }
    }

    EmgRecord rec;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != 5) {
            throw Error(ErrorCode::ParseError,
                        path + ":" + std::to_string(lineno) + ": wrong field count");
        }
        rec.t.push_back(parse_double(fields[0], path, lineno));
        for (size_t c = 0; c < 4; ++c) {
            rec.channels[c].push_back(parse_double(fields[c + 1], path, lineno));
        }
    }
    if (rec.t.size() < 2) {
        throw Error(ErrorCode::ParseError, path + ": need at least two samples");
    }
    rec.sample_rate_hz = 1.0 / (rec.t[1] - rec.t[0]);
    rec.validate();
    return rec;
}

void write_emg_csv(const std::string& path, const EmgRecord& rec) {
    std::ostringstream out;
    out << "t,pm,dm,bb,tb\n";
    for (size_t i = 0; i < rec.t.size(); ++i) {
        out << format_double(rec.t[i]);
        for (size_t c = 0; c < 4; ++c) out << ',' << format_double(rec.channels[c][i]);
        out << "\n";
    }
    write_or_throw(path, out.str());
}

void write_columns_csv(const std::string& path, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) {
        throw Error(ErrorCode::LengthMismatch, "write_columns_csv: header/column count mismatch");
    }
    std::ostringstream out;
    for (size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << "\n";
    const size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns) {
        if (col.size() != rows) {
            throw Error(ErrorCode::LengthMismatch, "write_columns_csv: ragged columns");
        }
    }
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << format_double(columns[c][r]);
        }
        out << "\n";
    }
    write_or_throw(path, out.str());
}

}  // namespace arae
