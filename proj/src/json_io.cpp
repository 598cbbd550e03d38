// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include "json_io.hpp"

#include <iterator>
#include <set>
#include <vector>

#include "feqn/error.hpp"

namespace feqn::detail {

namespace {

using json = nlohmann::json;

// Input iterator that publishes how far the lexer has read.
class TrackingIterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    TrackingIterator() = default;
    TrackingIterator(const char* p, std::size_t* consumed) : p_(p), consumed_(consumed) {}

    reference operator*() const { return *p_; }
    TrackingIterator& operator++() {
        ++p_;
        ++*consumed_;
        return *this;
    }
    TrackingIterator operator++(int) {
        auto tmp = *this;
        ++*this;
        return tmp;
    }
    friend bool operator==(const TrackingIterator& a, const TrackingIterator& b) { return a.p_ == b.p_; }

private:
    const char* p_ = nullptr;
    std::size_t* consumed_ = nullptr;
};

SourcePos position_of(std::string_view text, std::size_t offset) {
    SourcePos pos;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

std::string escape_pointer_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

// Builds the DOM through nlohmann's own SAX DOM builder while recording where each value starts.
// A token starts at the first character after the previous token that is not whitespace, ',' or ':'.
class PositionSax {
public:
    PositionSax(std::string_view text, const std::size_t* consumed, ParsedDocument& doc)
        : text_(text), consumed_(consumed), doc_(doc), dom_(doc.value, false) {}

    bool null() { return value(), dom_.null(); }
    bool boolean(bool v) { return value(), dom_.boolean(v); }
    bool number_integer(json::number_integer_t v) { return value(), dom_.number_integer(v); }
    bool number_unsigned(json::number_unsigned_t v) { return value(), dom_.number_unsigned(v); }
    bool number_float(json::number_float_t v, const std::string& s) { return value(), dom_.number_float(v, s); }
    bool string(std::string& v) { return value(), dom_.string(v); }
    bool binary(json::binary_t& v) { return value(), dom_.binary(v); }

    bool start_object(std::size_t n) {
        value();
        frames_.push_back({false, 0, {}, {}});
        return dom_.start_object(n);
    }
    bool key(std::string& k) {
        const std::size_t start = token_start();
        auto& f = frames_.back();
        if (!f.keys.insert(k).second)
            throw Error(ErrorCode::Parse, "line " + pos_string(start) + ": duplicate key \"" + k + "\"");
        f.key = k;
        mark_end();
        return dom_.key(k);
    }
    bool end_object() {
        frames_.pop_back();
        mark_end();
        return dom_.end_object();
    }
    bool start_array(std::size_t n) {
        value();
        frames_.push_back({true, 0, {}, {}});
        return dom_.start_array(n);
    }
    bool end_array() {
        frames_.pop_back();
        mark_end();
        return dom_.end_array();
    }

    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        const std::size_t offset = position > 0 ? position - 1 : 0;
        std::string msg = ex.what();
        const auto cut = msg.find("; ");
        if (cut != std::string::npos)
            msg = msg.substr(cut + 2);
        throw Error(ErrorCode::Parse, "line " + pos_string(offset) + ": JSON syntax error: " + msg);
    }

private:
    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
        std::set<std::string> keys;
    };

    std::size_t token_start() const {
        std::size_t i = last_end_;
        while (i < text_.size() && (text_[i] == ' ' || text_[i] == '\t' || text_[i] == '\n' || text_[i] == '\r' ||
                                    text_[i] == ',' || text_[i] == ':'))
            ++i;
        return i;
    }
    // A number token may leave the lexer one character ahead, but that character is always a
    // separator or closing bracket, so token_start() still lands on the next token.
    void mark_end() { last_end_ = *consumed_; }
    std::string pointer() const {
        std::string p;
        for (const auto& f : frames_)
            p += "/" + (f.array ? std::to_string(f.index) : escape_pointer_token(f.key));
        return p;
    }
    void value() {
        doc_.positions[pointer()] = position_of(text_, token_start());
        if (!frames_.empty() && frames_.back().array)
            ++frames_.back().index;
        mark_end();
    }
    std::string pos_string(std::size_t offset) const {
        const auto p = position_of(text_, offset);
        return std::to_string(p.line) + ", column " + std::to_string(p.column);
    }

    std::string_view text_;
    const std::size_t* consumed_;
    ParsedDocument& doc_;
    nlohmann::detail::json_sax_dom_parser<json> dom_;
    std::vector<Frame> frames_;
    std::size_t last_end_ = 0;
};

}  // namespace

ParsedDocument parse_document(std::string_view text) {
    ParsedDocument doc;
    std::size_t consumed = 0;
    PositionSax sax(text, &consumed, doc);
    TrackingIterator first(text.data(), &consumed);
    TrackingIterator last(text.data() + text.size(), &consumed);
    json::sax_parse(first, last, &sax);
    return doc;
}

}  // namespace feqn::detail
