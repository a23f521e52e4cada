#pragma once

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace qsx {

// Minimal streaming JSON writer. Doubles are printed with %.17g so values
// round-trip exactly and two runs with identical inputs emit identical bytes.
class JsonWriter {
public:
    void begin_object() { separator(); out_ += '{'; stack_.push_back(true); }
    void end_object() { out_ += '}'; stack_.pop_back(); mark_value(); }
    void begin_array() { separator(); out_ += '['; stack_.push_back(true); }
    void end_array() { out_ += ']'; stack_.pop_back(); mark_value(); }

    void key(const std::string& k) {
        separator();
        write_string(k);
        out_ += ':';
        pending_key_ = true;
    }

    void value(double v) {
        separator();
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out_ += buf;
        mark_value();
    }
    void value(std::uint64_t v) {
        separator();
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
        out_ += buf;
        mark_value();
    }
    void value(int v) { value(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
    void value(const std::string& v) {
        separator();
        write_string(v);
        mark_value();
    }
    void value(const char* v) { value(std::string(v)); }
    void value(bool v) {
        separator();
        out_ += v ? "true" : "false";
        mark_value();
    }

    template <typename T>
    void key_value(const std::string& k, const T& v) {
        key(k);
        value(v);
    }

    void key_array(const std::string& k, const std::vector<double>& vs) {
        key(k);
        begin_array();
        for (double v : vs) value(v);
        end_array();
    }

    const std::string& str() const { return out_; }

private:
    void separator() {
        if (pending_key_) {
            pending_key_ = false;
            return;
        }
        if (!stack_.empty() && !stack_.back()) out_ += ',';
    }
    void mark_value() {
        if (!stack_.empty()) stack_.back() = false;
    }
    void write_string(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default: out_ += c;
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> stack_;  // true = container still empty
    bool pending_key_ = false;
};

}  // namespace qsx
