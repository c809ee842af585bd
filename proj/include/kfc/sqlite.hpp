#pragma once
// Minimal RAII layer over the SQLite C API.

#include <sqlite3.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>

#include "kfc/error.hpp"

namespace kfc::sql {

inline ErrorKind classify_sqlite_error(int rc) {
    switch (rc) {
        case SQLITE_NOTADB:
            return ErrorKind::not_a_container;
        case SQLITE_CONSTRAINT:
            return ErrorKind::constraint;
        case SQLITE_READONLY:
            return ErrorKind::read_only_handle;
        case SQLITE_IOERR:
        case SQLITE_CANTOPEN:
        case SQLITE_FULL:
        case SQLITE_BUSY:
        case SQLITE_LOCKED:
        case SQLITE_PERM:
        case SQLITE_CORRUPT:
            return ErrorKind::io;
        default:
            return ErrorKind::internal;
    }
}

class Stmt;

class Db {
public:
    Db() = default;
    Db(const Db&) = delete;
    Db& operator=(const Db&) = delete;
    Db(Db&& other) noexcept : db_(std::exchange(other.db_, nullptr)) {}
    Db& operator=(Db&& other) noexcept {
        if (this != &other) {
            close();
            db_ = std::exchange(other.db_, nullptr);
        }
        return *this;
    }
    ~Db() { close(); }

    void open(const std::filesystem::path& path, int flags) {
        const int rc = sqlite3_open_v2(path.string().c_str(), &db_, flags, nullptr);
        if (rc != SQLITE_OK) {
            std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
            close();
            raise(classify_sqlite_error(rc), "cannot open " + path.string() + ": " + msg);
        }
        sqlite3_busy_timeout(db_, 10000);
        sqlite3_extended_result_codes(db_, 0);
    }

    void close() {
        if (db_ != nullptr) {
            sqlite3_close_v2(db_);
            db_ = nullptr;
        }
    }

    bool is_open() const { return db_ != nullptr; }
    sqlite3* raw() const { return db_; }

    void exec(const std::string& sql) {
        char* err = nullptr;
        const int rc = sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &err);
        if (rc != SQLITE_OK) {
            std::string msg = err ? err : sqlite3_errmsg(db_);
            sqlite3_free(err);
            raise(classify_sqlite_error(rc), "sql exec failed: " + msg);
        }
    }

    Stmt prepare(std::string_view sql) const;

    int64_t last_insert_rowid() const { return sqlite3_last_insert_rowid(db_); }
    int64_t changes() const { return sqlite3_changes64(db_); }

private:
    sqlite3* db_ = nullptr;
};

class Stmt {
public:
    Stmt(sqlite3* db, std::string_view sql) : db_(db) {
        const int rc =
            sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &st_, nullptr);
        if (rc != SQLITE_OK)
            raise(classify_sqlite_error(rc),
                  "prepare failed: " + std::string(sqlite3_errmsg(db)) + " [" +
                      std::string(sql) + "]");
    }
    Stmt(const Stmt&) = delete;
    Stmt& operator=(const Stmt&) = delete;
    Stmt(Stmt&& other) noexcept
        : db_(other.db_), st_(std::exchange(other.st_, nullptr)) {}
    ~Stmt() { sqlite3_finalize(st_); }

    Stmt& bind(int idx, int64_t v) {
        check(sqlite3_bind_int64(st_, idx, v));
        return *this;
    }
    Stmt& bind(int idx, double v) {
        check(sqlite3_bind_double(st_, idx, v));
        return *this;
    }
    Stmt& bind(int idx, std::string_view v) {
        check(sqlite3_bind_text(st_, idx, v.data(), static_cast<int>(v.size()),
                                SQLITE_TRANSIENT));
        return *this;
    }
    Stmt& bind_blob(int idx, const void* data, size_t n) {
        check(sqlite3_bind_blob(st_, idx, data, static_cast<int>(n), SQLITE_TRANSIENT));
        return *this;
    }
    Stmt& bind_null(int idx) {
        check(sqlite3_bind_null(st_, idx));
        return *this;
    }

    // True while a result row is available.
    bool step() {
        const int rc = sqlite3_step(st_);
        if (rc == SQLITE_ROW) return true;
        if (rc == SQLITE_DONE) return false;
        raise(classify_sqlite_error(rc),
              "step failed: " + std::string(sqlite3_errmsg(db_)));
    }

    void exec() {
        while (step()) {
        }
    }

    void reset() {
        sqlite3_reset(st_);
        sqlite3_clear_bindings(st_);
    }

    int64_t column_int64(int col) const { return sqlite3_column_int64(st_, col); }
    double column_double(int col) const { return sqlite3_column_double(st_, col); }
    bool column_is_null(int col) const {
        return sqlite3_column_type(st_, col) == SQLITE_NULL;
    }
    std::string column_text(int col) const {
        const auto* p = sqlite3_column_text(st_, col);
        const int n = sqlite3_column_bytes(st_, col);
        return p ? std::string(reinterpret_cast<const char*>(p), static_cast<size_t>(n))
                 : std::string();
    }
    std::string column_blob(int col) const {
        const void* p = sqlite3_column_blob(st_, col);
        const int n = sqlite3_column_bytes(st_, col);
        return p ? std::string(static_cast<const char*>(p), static_cast<size_t>(n))
                 : std::string();
    }

private:
    void check(int rc) {
        if (rc != SQLITE_OK)
            raise(classify_sqlite_error(rc),
                  "bind failed: " + std::string(sqlite3_errmsg(db_)));
    }

    sqlite3* db_ = nullptr;
    sqlite3_stmt* st_ = nullptr;
};

inline Stmt Db::prepare(std::string_view sql) const { return Stmt(db_, sql); }

enum class TxnMode { deferred, immediate };

// Scoped transaction; rolls back unless commit() ran.
class Txn {
public:
    Txn(Db& db, TxnMode mode) : db_(db) {
        db_.exec(mode == TxnMode::immediate ? "BEGIN IMMEDIATE" : "BEGIN");
        active_ = true;
    }
    ~Txn() {
        if (active_) {
            try {
                db_.exec("ROLLBACK");
            } catch (...) {
            }
        }
    }
    Txn(const Txn&) = delete;
    Txn& operator=(const Txn&) = delete;

    void commit() {
        db_.exec("COMMIT");
        active_ = false;
    }

private:
    Db& db_;
    bool active_ = false;
};

} // namespace kfc::sql
