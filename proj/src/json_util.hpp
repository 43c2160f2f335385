#pragma once

// Helpers for walking parsed documents with JSON-pointer error locations.

#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace iotrisk::detail {

using nlohmann::json;

// Parses JSON text; syntax errors become SyntaxError at "line L, column C".
json parse_json(std::string_view document);

std::string child_path(const std::string& path, std::string_view key);
std::string child_path(const std::string& path, std::size_t index);

[[noreturn]] void schema_error(const std::string& path, const std::string& reason);

void expect_object(const json& value, const std::string& path);
void expect_array(const json& value, const std::string& path);
void check_keys(const json& object, std::initializer_list<std::string_view> allowed, const std::string& path);

const json& require(const json& object, std::string_view key, const std::string& path);

std::string read_string(const json& value, const std::string& path, bool allow_empty = true);
double read_number(const json& value, const std::string& path);
bool read_bool(const json& value, const std::string& path);
std::uint64_t read_unsigned(const json& value, const std::string& path);

}  // namespace iotrisk::detail
