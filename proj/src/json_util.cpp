#include "json_util.hpp"

#include <algorithm>
#include <cmath>

#include "iotrisk/error.hpp"

namespace iotrisk::detail {

json parse_json(std::string_view document) {
    try {
        return json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const auto end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, document.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (document[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        auto colon = what.rfind(": ");
        throw Error(ErrorCode::SyntaxError, colon == std::string::npos ? what : what.substr(colon + 2),
                    "line " + std::to_string(line) + ", column " + std::to_string(column));
    }
}

std::string child_path(const std::string& path, std::string_view key) {
    std::string escaped;
    for (char c : key) {
        if (c == '~') {
            escaped += "~0";
        } else if (c == '/') {
            escaped += "~1";
        } else {
            escaped += c;
        }
    }
    return path + "/" + escaped;
}

std::string child_path(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

void schema_error(const std::string& path, const std::string& reason) {
    throw Error(ErrorCode::SchemaError, reason, path.empty() ? "/" : path);
}

void expect_object(const json& value, const std::string& path) {
    if (!value.is_object()) {
        schema_error(path, "expected an object");
    }
}

void expect_array(const json& value, const std::string& path) {
    if (!value.is_array()) {
        schema_error(path, "expected an array");
    }
}

void check_keys(const json& object, std::initializer_list<std::string_view> allowed, const std::string& path) {
    expect_object(object, path);
    for (const auto& item : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            schema_error(child_path(path, item.key()), "unknown key '" + item.key() + "'");
        }
    }
}

const json& require(const json& object, std::string_view key, const std::string& path) {
    auto it = object.find(key);
    if (it == object.end()) {
        schema_error(child_path(path, key), "missing required key '" + std::string(key) + "'");
    }
    return *it;
}

std::string read_string(const json& value, const std::string& path, bool allow_empty) {
    if (!value.is_string()) {
        schema_error(path, "expected a string");
    }
    auto text = value.get<std::string>();
    if (!allow_empty && text.empty()) {
        schema_error(path, "must not be empty");
    }
    return text;
}

double read_number(const json& value, const std::string& path) {
    if (!value.is_number()) {
        schema_error(path, "expected a number");
    }
    auto number = value.get<double>();
    if (!std::isfinite(number)) {
        schema_error(path, "expected a finite number");
    }
    return number;
}

bool read_bool(const json& value, const std::string& path) {
    if (!value.is_boolean()) {
        schema_error(path, "expected true or false");
    }
    return value.get<bool>();
}

std::uint64_t read_unsigned(const json& value, const std::string& path) {
    if (!value.is_number_unsigned()) {
        schema_error(path, "expected a non-negative integer");
    }
    return value.get<std::uint64_t>();
}

}  // namespace iotrisk::detail
