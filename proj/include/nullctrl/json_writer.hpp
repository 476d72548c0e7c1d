#pragma once

// Minimal streaming JSON writer used for all emitted reports. Doubles are
// formatted with 17 significant digits so identical runs produce
// byte-identical files.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "nullctrl/linalg.hpp"

namespace nullctrl {

class JsonWriter {
  public:
    std::string str() const { return out_.str(); }

    JsonWriter& begin_object() {
        comma();
        out_ << '{';
        stack_.push_back(false);
        return *this;
    }
    JsonWriter& end_object() {
        out_ << '}';
        stack_.pop_back();
        mark();
        return *this;
    }
    JsonWriter& begin_array() {
        comma();
        out_ << '[';
        stack_.push_back(false);
        return *this;
    }
    JsonWriter& end_array() {
        out_ << ']';
        stack_.pop_back();
        mark();
        return *this;
    }
    JsonWriter& key(const std::string& k) {
        comma();
        write_string(k);
        out_ << ':';
        pending_value_ = true;
        return *this;
    }
    JsonWriter& value(double v) {
        comma();
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out_ << buf;
        mark();
        return *this;
    }
    JsonWriter& value(bool v) {
        comma();
        out_ << (v ? "true" : "false");
        mark();
        return *this;
    }
    JsonWriter& value(std::size_t v) {
        comma();
        out_ << v;
        mark();
        return *this;
    }
    JsonWriter& value(int v) {
        comma();
        out_ << v;
        mark();
        return *this;
    }
    JsonWriter& value(const std::string& v) {
        comma();
        write_string(v);
        mark();
        return *this;
    }
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& value(const cxd& v) {
        begin_object();
        key("re").value(v.real());
        key("im").value(v.imag());
        end_object();
        return *this;
    }

  private:
    void comma() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!stack_.empty() && stack_.back()) out_ << ',';
    }
    void mark() {
        if (!stack_.empty()) stack_.back() = true;
    }
    void write_string(const std::string& s) {
        out_ << '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ << "\\\""; break;
                case '\\': out_ << "\\\\"; break;
                case '\n': out_ << "\\n"; break;
                case '\t': out_ << "\\t"; break;
                default: out_ << c;
            }
        }
        out_ << '"';
    }

    std::ostringstream out_;
    std::vector<bool> stack_;
    bool pending_value_ = false;
};

}  // namespace nullctrl
