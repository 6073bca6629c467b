#pragma once

#include <stdexcept>
#include <string>

namespace gaitxai {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class MissingChannel : public Error {
public:
    explicit MissingChannel(const std::string& channelKey)
        : Error("missing channel: " + channelKey), channel_(channelKey) {}
    const std::string& channel() const noexcept { return channel_; }

private:
    std::string channel_;
};

class MissingSide : public Error {
public:
    using Error::Error;
};

class InvalidModel : public Error {
public:
    using Error::Error;
};

/// Raised by the file readers; `path()` is a JSON-pointer-like location
/// of the offending element (or "/" for file-level problems).
class FormatError : public Error {
public:
    FormatError(std::string path, const std::string& message)
        : Error("format error at " + path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class NotFound : public Error {
public:
    using Error::Error;
};

}  // namespace gaitxai
