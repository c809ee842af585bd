#pragma once
// Single-file knowledge container. Four logical regions live in one SQLite
// database: M (documents), C (segments), V (vectors), I (vocabulary +
// postings). WAL mode gives one serialized writer and concurrent snapshot
// readers; every mutation is one transaction.

#include <sqlite3.h>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kfc/error.hpp"
#include "kfc/sqlite.hpp"
#include "kfc/textindex.hpp"
#include "kfc/types.hpp"
#include "kfc/unicode.hpp"

namespace kfc {

enum class OpenMode { read_only, read_write };

inline int64_t now_utc_seconds() {
    using namespace std::chrono;
    return duration_cast<seconds>(system_clock::now().time_since_epoch()).count();
}

// Segment body as handed to commit_document; ordinal is positional.
struct SegmentDraft {
    std::string content;
    int64_t char_count = 0;
};

// Index updates accompanying one document commit: per-segment raw term
// counts (the posting rows) plus terms the staging registered.
struct IndexDelta {
    std::vector<TermCounts> segment_term_counts;
    std::vector<std::pair<std::string, int64_t>> new_terms;
    int64_t next_term_id = 0;
    int64_t staged_generation = 0;  // generation the term ids were resolved at
};

// Generation-stamped derived state used by the query layer: idf per term,
// weighted norm per segment, and case-folded segment text for the
// substring boost scan.
struct IndexSnapshot {
    struct SegmentText {
        int64_t segment_id = 0;
        int64_t doc_id = 0;
        std::string folded;  // NFC + simple case folding of the content
    };

    int64_t generation = 0;
    int64_t total_segments = 0;
    std::unordered_map<std::string, VocabEntry> terms;
    IdfTable idf_table;
    std::unordered_map<int64_t, double> idf_by_id;
    std::unordered_map<int64_t, double> norm_by_segment;
    std::vector<SegmentText> folded_segments;  // ascending segment_id
};

class Container {
public:
    static constexpr int64_t kFormatVersion = 1;

    static Container create(const std::filesystem::path& path) {
        std::error_code ec;
        if (std::filesystem::exists(path, ec) &&
            std::filesystem::file_size(path, ec) > 0) {
            if (looks_like_container(path))
                raise(ErrorKind::already_exists,
                      "container already exists: " + path.string());
            raise(ErrorKind::precondition,
                  "refusing to overwrite non-container file: " + path.string());
        }
        return Container(path, OpenMode::read_write, /*create=*/true);
    }

    static Container open(const std::filesystem::path& path, OpenMode mode) {
        if (!std::filesystem::exists(path))
            raise(ErrorKind::io, "no such container: " + path.string());
        return Container(path, mode, /*create=*/false);
    }

    Container(Container&&) = default;
    Container& operator=(Container&&) = default;

    const std::filesystem::path& path() const { return path_; }
    OpenMode mode() const { return mode_; }
    int64_t format_version() const { return format_version_; }

    // ------------------------------------------------------------------
    // Mutations (read-write handles only)
    // ------------------------------------------------------------------

    TermStaging begin_staging() {
        std::lock_guard lk(*mu_);
        require_writable();
        // Another handle may have committed since this one loaded its
        // vocabulary mirror; refresh before handing out term ids.
        const int64_t gen = meta_i64("kf.generation");
        if (gen != mirror_generation_) {
            load_writer_state();
            mirror_generation_ = gen;
        }
        return TermStaging(&vocab_ids_, next_term_id_, mirror_generation_);
    }

    // Applies one document atomically: removes any previous version of the
    // same source_path, writes all four regions, and keeps df counters
    // consistent. Returns the new doc_id.
    int64_t commit_document(const DocumentRecord& record,
                            const std::vector<SegmentDraft>& segments,
                            const std::vector<SparseVector>& vectors,
                            const IndexDelta& delta) {
        std::lock_guard lk(*mu_);
        require_writable();
        validate_commit_inputs(record, segments, vectors, delta);

        sql::Txn txn(db_, sql::TxnMode::immediate);
        // The write lock is held from here on; term ids resolved against an
        // older generation may clash with or dangle from the current state.
        if (meta_i64("kf.generation") != delta.staged_generation)
            raise(ErrorKind::constraint,
                  "container changed since staging began; restage and retry");
        int step = 0;
        const auto fault = [&] {
            if (fault_hook_) fault_hook_(step);
            ++step;
        };
        fault();

        std::unordered_map<int64_t, int64_t> df_delta;
        remove_document_rows(record.source_path, df_delta);
        fault();

        auto ins_doc = db_.prepare(
            "INSERT INTO documents(source_path, signature, ingested_at, size_bytes, "
            "modality) VALUES(?,?,?,?,?)");
        ins_doc.bind(1, std::string_view(record.source_path));
        ins_doc.bind_blob(2, record.signature.data(), record.signature.size());
        ins_doc.bind(3, record.ingested_at);
        ins_doc.bind(4, static_cast<int64_t>(record.size_bytes));
        ins_doc.bind(5, std::string_view(to_string(record.modality)));
        ins_doc.exec();
        const int64_t doc_id = db_.last_insert_rowid();
        fault();

        auto ins_seg = db_.prepare(
            "INSERT INTO segments(doc_id, ordinal, content, char_count) VALUES(?,?,?,?)");
        auto ins_vec = db_.prepare("INSERT INTO vectors(segment_id, doc_id, vec) VALUES(?,?,?)");
        auto ins_post = db_.prepare("INSERT INTO postings(term_id, segment_id, freq) VALUES(?,?,?)");
        for (size_t i = 0; i < segments.size(); ++i) {
            ins_seg.reset();
            ins_seg.bind(1, doc_id);
            ins_seg.bind(2, static_cast<int64_t>(i));
            ins_seg.bind(3, std::string_view(segments[i].content));
            ins_seg.bind(4, segments[i].char_count);
            ins_seg.exec();
            const int64_t segment_id = db_.last_insert_rowid();

            const std::string blob = encode_sparse_vector(vectors[i]);
            ins_vec.reset();
            ins_vec.bind(1, segment_id);
            ins_vec.bind(2, doc_id);
            ins_vec.bind_blob(3, blob.data(), blob.size());
            ins_vec.exec();

            for (const auto& [term_id, freq] : delta.segment_term_counts[i]) {
                ins_post.reset();
                ins_post.bind(1, term_id);
                ins_post.bind(2, segment_id);
                ins_post.bind(3, static_cast<int64_t>(freq));
                ins_post.exec();
                df_delta[term_id] += 1;
            }
            fault();
        }

        const auto evicted = apply_vocab_delta(delta.new_terms, df_delta);
        fault();

        if (delta.next_term_id > next_term_id_)
            set_meta_i64("kf.next_term_id", delta.next_term_id);
        bump_generation();
        const int64_t new_generation = meta_i64("kf.generation");
        fault();

        txn.commit();

        for (const auto& [term, id] : delta.new_terms) vocab_ids_.emplace(term, id);
        for (const auto& term : evicted) vocab_ids_.erase(term);
        if (delta.next_term_id > next_term_id_) next_term_id_ = delta.next_term_id;
        mirror_generation_ = new_generation;
        snapshot_.reset();
        ++commit_count_;
        return doc_id;
    }

    // Removes a document and all dependent rows; false when absent.
    bool delete_document(std::string_view source_path) {
        std::lock_guard lk(*mu_);
        require_writable();

        sql::Txn txn(db_, sql::TxnMode::immediate);
        int step = 0;
        const auto fault = [&] {
            if (fault_hook_) fault_hook_(step);
            ++step;
        };
        fault();

        std::unordered_map<int64_t, int64_t> df_delta;
        if (!remove_document_rows(source_path, df_delta)) return false;
        fault();

        const auto evicted = apply_vocab_delta({}, df_delta);
        fault();

        bump_generation();
        const int64_t new_generation = meta_i64("kf.generation");
        fault();

        txn.commit();
        for (const auto& term : evicted) vocab_ids_.erase(term);
        mirror_generation_ = new_generation;
        snapshot_.reset();
        return true;
    }

    // ------------------------------------------------------------------
    // Reads
    // ------------------------------------------------------------------

    ContainerStats stats() {
        std::lock_guard lk(*mu_);
        sql::Txn txn(db_, sql::TxnMode::deferred);
        ContainerStats s;
        s.documents = scalar_i64("SELECT COUNT(*) FROM documents");
        s.segments = scalar_i64("SELECT COUNT(*) FROM segments");
        s.terms = scalar_i64("SELECT COUNT(*) FROM vocabulary");
        const int64_t pages = scalar_i64("PRAGMA page_count");
        const int64_t page_size = scalar_i64("PRAGMA page_size");
        s.file_bytes = static_cast<uint64_t>(pages * page_size);
        txn.commit();
        return s;
    }

    std::optional<DocumentRecord> find_document(std::string_view source_path) {
        std::lock_guard lk(*mu_);
        return find_document_nolock(source_path);
    }

    std::optional<DocumentRecord> document_by_id(int64_t doc_id) {
        std::lock_guard lk(*mu_);
        return document_by_id_nolock(doc_id);
    }

    std::vector<DocumentRecord> list_documents() {
        std::lock_guard lk(*mu_);
        std::vector<DocumentRecord> out;
        auto st = db_.prepare(
            "SELECT doc_id, source_path, signature, ingested_at, size_bytes, modality "
            "FROM documents ORDER BY doc_id");
        while (st.step()) out.push_back(row_to_document(st));
        return out;
    }

    std::vector<SegmentRecord> document_segments(int64_t doc_id) {
        std::lock_guard lk(*mu_);
        std::vector<SegmentRecord> out;
        auto st = db_.prepare(
            "SELECT segment_id, doc_id, ordinal, content, char_count FROM segments "
            "WHERE doc_id = ? ORDER BY ordinal");
        st.bind(1, doc_id);
        while (st.step()) out.push_back(row_to_segment(st));
        return out;
    }

    std::optional<SegmentRecord> get_segment(int64_t segment_id) {
        std::lock_guard lk(*mu_);
        return segment_nolock(segment_id);
    }

    SparseVector segment_vector(int64_t segment_id) {
        std::lock_guard lk(*mu_);
        auto st = db_.prepare("SELECT vec FROM vectors WHERE segment_id = ?");
        st.bind(1, segment_id);
        if (!st.step())
            raise(ErrorKind::precondition, "no vector for segment " + std::to_string(segment_id));
        return decode_sparse_vector(st.column_blob(0));
    }

    std::vector<VocabEntry> vocabulary() {
        std::lock_guard lk(*mu_);
        std::vector<VocabEntry> out;
        auto st = db_.prepare(
            "SELECT term_id, term, document_frequency FROM vocabulary ORDER BY term_id");
        while (st.step())
            out.push_back({st.column_int64(0), st.column_text(1), st.column_int64(2)});
        return out;
    }

    std::optional<VocabEntry> term_entry(std::string_view term) {
        std::lock_guard lk(*mu_);
        auto st = db_.prepare(
            "SELECT term_id, term, document_frequency FROM vocabulary WHERE term = ?");
        st.bind(1, term);
        if (!st.step()) return std::nullopt;
        return VocabEntry{st.column_int64(0), st.column_text(1), st.column_int64(2)};
    }

    std::vector<Posting> postings(int64_t term_id) {
        std::lock_guard lk(*mu_);
        return postings_nolock(term_id);
    }

    int64_t segment_count() {
        std::lock_guard lk(*mu_);
        return scalar_i64("SELECT COUNT(*) FROM segments");
    }

    int64_t generation() {
        std::lock_guard lk(*mu_);
        return meta_i64("kf.generation");
    }

    uint64_t commit_count() const { return commit_count_; }

    // Read access bound to one snapshot transaction.
    class ReadView {
    public:
        explicit ReadView(Container& c) : c_(c) {}
        std::vector<Posting> postings(int64_t term_id) const {
            return c_.postings_nolock(term_id);
        }
        std::optional<SegmentRecord> segment(int64_t segment_id) const {
            return c_.segment_nolock(segment_id);
        }
        std::optional<DocumentRecord> document(int64_t doc_id) const {
            return c_.document_by_id_nolock(doc_id);
        }

    private:
        Container& c_;
    };

    // Runs f(view, snapshot) inside a single read transaction, so the
    // snapshot and every row it touches come from one committed state.
    template <typename F>
    auto with_read_snapshot(F&& f) {
        std::lock_guard lk(*mu_);
        sql::Txn txn(db_, sql::TxnMode::deferred);
        const auto snap = snapshot_nolock();
        ReadView view(*this);
        if constexpr (std::is_void_v<decltype(f(view, *snap))>) {
            f(view, *snap);
            txn.commit();
        } else {
            auto result = f(view, *snap);
            txn.commit();
            return result;
        }
    }

    std::shared_ptr<const IndexSnapshot> index_snapshot() {
        std::lock_guard lk(*mu_);
        sql::Txn txn(db_, sql::TxnMode::deferred);
        auto snap = snapshot_nolock();
        txn.commit();
        return snap;
    }

    // Test hook: called before/after each region-write step of a commit;
    // throwing aborts the transaction.
    void set_commit_fault_hook(std::function<void(int)> hook) {
        std::lock_guard lk(*mu_);
        fault_hook_ = std::move(hook);
    }

private:
    Container(const std::filesystem::path& path, OpenMode mode, bool create)
        : path_(path), mode_(mode) {
        int flags = mode == OpenMode::read_only ? SQLITE_OPEN_READONLY : SQLITE_OPEN_READWRITE;
        if (create) flags |= SQLITE_OPEN_CREATE;
        db_.open(path, flags);

        if (create) {
            apply_writer_pragmas();
            sql::Txn txn(db_, sql::TxnMode::immediate);
            create_schema();
            txn.commit();
            format_version_ = kFormatVersion;
        } else {
            probe_header();
            if (mode == OpenMode::read_write) apply_writer_pragmas();
        }
        if (mode == OpenMode::read_write) {
            load_writer_state();
            mirror_generation_ = meta_i64("kf.generation");
        }
    }

    static bool looks_like_container(const std::filesystem::path& path) {
        try {
            Container probe(path, OpenMode::read_only, /*create=*/false);
            return true;
        } catch (const Error& e) {
            // A container we merely cannot read this build counts as one.
            return e.kind() == ErrorKind::unsupported_version;
        }
    }

    void require_writable() const {
        if (mode_ != OpenMode::read_write)
            raise(ErrorKind::read_only_handle,
                  "read-only handle: " + path_.string());
    }

    void apply_writer_pragmas() {
        db_.exec("PRAGMA journal_mode=WAL");
        db_.exec("PRAGMA synchronous=NORMAL");
        db_.exec("PRAGMA foreign_keys=ON");
    }

    void create_schema() {
        db_.exec(R"sql(
            CREATE TABLE kf_meta(
                key   TEXT PRIMARY KEY,
                value TEXT NOT NULL
            ) WITHOUT ROWID;
            CREATE TABLE documents(
                doc_id      INTEGER PRIMARY KEY AUTOINCREMENT,
                source_path TEXT NOT NULL UNIQUE CHECK(length(source_path) > 0),
                signature   BLOB NOT NULL CHECK(length(signature) = 32),
                ingested_at INTEGER NOT NULL,
                size_bytes  INTEGER NOT NULL CHECK(size_bytes >= 0),
                modality    TEXT NOT NULL
            );
            CREATE TABLE segments(
                segment_id INTEGER PRIMARY KEY AUTOINCREMENT,
                doc_id     INTEGER NOT NULL REFERENCES documents(doc_id),
                ordinal    INTEGER NOT NULL CHECK(ordinal >= 0),
                content    TEXT NOT NULL CHECK(length(content) > 0),
                char_count INTEGER NOT NULL CHECK(char_count > 0),
                UNIQUE(doc_id, ordinal)
            );
            CREATE TABLE vectors(
                segment_id INTEGER PRIMARY KEY REFERENCES segments(segment_id),
                doc_id     INTEGER NOT NULL REFERENCES documents(doc_id),
                vec        BLOB NOT NULL
            );
            CREATE TABLE vocabulary(
                term_id            INTEGER PRIMARY KEY,
                term               TEXT NOT NULL UNIQUE,
                document_frequency INTEGER NOT NULL CHECK(document_frequency >= 0)
            );
            CREATE TABLE postings(
                term_id    INTEGER NOT NULL,
                segment_id INTEGER NOT NULL,
                freq       INTEGER NOT NULL CHECK(freq >= 1),
                PRIMARY KEY(term_id, segment_id)
            ) WITHOUT ROWID;
        )sql");
        auto ins = db_.prepare("INSERT INTO kf_meta(key, value) VALUES(?,?)");
        const auto put = [&](std::string_view k, std::string_view v) {
            ins.reset();
            ins.bind(1, k);
            ins.bind(2, v);
            ins.exec();
        };
        put("kf.format_version", std::to_string(kFormatVersion));
        put("kf.generation", "0");
        put("kf.next_term_id", "1");
    }

    void probe_header() {
        {
            auto st = db_.prepare(
                "SELECT name FROM sqlite_master WHERE type='table' AND name='kf_meta'");
            if (!st.step())
                raise(ErrorKind::not_a_container,
                      "not a knowledge container: " + path_.string());
        }
        auto st = db_.prepare("SELECT value FROM kf_meta WHERE key='kf.format_version'");
        if (!st.step())
            raise(ErrorKind::not_a_container,
                  "container header missing format version: " + path_.string());
        int64_t version = 0;
        try {
            version = std::stoll(st.column_text(0));
        } catch (...) {
            raise(ErrorKind::not_a_container,
                  "container header corrupt: " + path_.string());
        }
        if (version < 1 || version > kFormatVersion)
            raise(ErrorKind::unsupported_version,
                  "unsupported container format version " + std::to_string(version) +
                      " (this build supports up to " + std::to_string(kFormatVersion) + ")");
        format_version_ = version;
    }

    void load_writer_state() {
        vocab_ids_.clear();
        auto st = db_.prepare("SELECT term, term_id FROM vocabulary");
        while (st.step()) vocab_ids_.emplace(st.column_text(0), st.column_int64(1));
        next_term_id_ = meta_i64("kf.next_term_id");
    }

    void validate_commit_inputs(const DocumentRecord& record,
                                const std::vector<SegmentDraft>& segments,
                                const std::vector<SparseVector>& vectors,
                                const IndexDelta& delta) const {
        if (record.source_path.empty())
            raise(ErrorKind::precondition, "document source_path must be non-empty");
        if (segments.size() != vectors.size() ||
            segments.size() != delta.segment_term_counts.size())
            raise(ErrorKind::precondition,
                  "segments, vectors and postings must be parallel lists");
        for (size_t i = 0; i < segments.size(); ++i) {
            if (segments[i].content.empty())
                raise(ErrorKind::constraint, "segment content must be non-empty");
            if (segments[i].char_count !=
                static_cast<int64_t>(uni::codepoint_count(segments[i].content)))
                raise(ErrorKind::constraint, "segment char_count does not match content");
            const auto& counts = delta.segment_term_counts[i];
            const auto& vec = vectors[i].entries;
            if (counts.size() != vec.size())
                raise(ErrorKind::constraint, "vector and posting counts disagree");
            for (size_t j = 0; j < counts.size(); ++j) {
                if (counts[j].first != vec[j].first)
                    raise(ErrorKind::constraint, "vector and posting term ids disagree");
                if (counts[j].second == 0)
                    raise(ErrorKind::constraint, "posting counts must be >= 1");
            }
        }
        if (delta.next_term_id != 0 && delta.next_term_id < next_term_id_)
            raise(ErrorKind::constraint, "stale term staging (next_term_id regressed)");
    }

    // Deletes the document row set for source_path (if present) and records
    // df decrements from its stored vectors. Returns true when a document
    // existed.
    bool remove_document_rows(std::string_view source_path,
                              std::unordered_map<int64_t, int64_t>& df_delta) {
        int64_t doc_id = 0;
        {
            auto st = db_.prepare("SELECT doc_id FROM documents WHERE source_path = ?");
            st.bind(1, source_path);
            if (!st.step()) return false;
            doc_id = st.column_int64(0);
        }
        auto del_post = db_.prepare(
            "DELETE FROM postings WHERE term_id = ? AND segment_id = ?");
        {
            auto st = db_.prepare("SELECT segment_id, vec FROM vectors WHERE doc_id = ?");
            st.bind(1, doc_id);
            while (st.step()) {
                const int64_t segment_id = st.column_int64(0);
                const SparseVector vec = decode_sparse_vector(st.column_blob(1));
                for (const auto& [term_id, _] : vec.entries) {
                    del_post.reset();
                    del_post.bind(1, term_id);
                    del_post.bind(2, segment_id);
                    del_post.exec();
                    df_delta[term_id] -= 1;
                }
            }
        }
        const auto exec_with = [&](std::string_view sql) {
            auto st = db_.prepare(sql);
            st.bind(1, doc_id);
            st.exec();
        };
        exec_with("DELETE FROM vectors WHERE doc_id = ?");
        exec_with("DELETE FROM segments WHERE doc_id = ?");
        exec_with("DELETE FROM documents WHERE doc_id = ?");
        return true;
    }

    // Applies net df changes: inserts brand-new terms with their initial df,
    // adjusts existing rows, and evicts rows whose df reached zero. Returns
    // the evicted term texts.
    std::vector<std::string> apply_vocab_delta(
        const std::vector<std::pair<std::string, int64_t>>& new_terms,
        std::unordered_map<int64_t, int64_t>& df_delta) {
        std::unordered_set<int64_t> new_ids;
        auto ins = db_.prepare(
            "INSERT INTO vocabulary(term_id, term, document_frequency) VALUES(?,?,?)");
        for (const auto& [term, id] : new_terms) {
            const auto it = df_delta.find(id);
            const int64_t df = it == df_delta.end() ? 0 : it->second;
            if (df < 1)
                raise(ErrorKind::constraint,
                      "staged term carries no postings: " + term);
            ins.reset();
            ins.bind(1, id);
            ins.bind(2, std::string_view(term));
            ins.bind(3, df);
            ins.exec();
            new_ids.insert(id);
        }

        std::vector<std::string> evicted;
        auto upd = db_.prepare(
            "UPDATE vocabulary SET document_frequency = document_frequency + ? "
            "WHERE term_id = ?");
        auto evict = db_.prepare(
            "DELETE FROM vocabulary WHERE term_id = ? AND document_frequency = 0 "
            "RETURNING term");
        for (const auto& [term_id, net] : df_delta) {
            if (net == 0 || new_ids.contains(term_id)) continue;
            upd.reset();
            upd.bind(1, net);
            upd.bind(2, term_id);
            upd.exec();  // CHECK(df >= 0) aborts the commit on negative df
            if (net < 0) {
                evict.reset();
                evict.bind(1, term_id);
                while (evict.step()) evicted.push_back(evict.column_text(0));
            }
        }
        return evicted;
    }

    std::shared_ptr<const IndexSnapshot> snapshot_nolock() {
        const int64_t gen = meta_i64("kf.generation");
        if (snapshot_ && snapshot_->generation == gen) return snapshot_;

        auto snap = std::make_shared<IndexSnapshot>();
        snap->generation = gen;
        snap->total_segments = scalar_i64("SELECT COUNT(*) FROM segments");
        snap->idf_table.total_segments = snap->total_segments;
        {
            auto st = db_.prepare("SELECT term_id, term, document_frequency FROM vocabulary");
            while (st.step()) {
                VocabEntry e{st.column_int64(0), st.column_text(1), st.column_int64(2)};
                snap->idf_table.df.emplace(e.term_id, e.document_frequency);
                snap->idf_by_id.emplace(
                    e.term_id, idf(snap->total_segments, e.document_frequency));
                snap->terms.emplace(e.term, std::move(e));
            }
        }
        {
            auto st = db_.prepare("SELECT segment_id, vec FROM vectors");
            while (st.step()) {
                const int64_t segment_id = st.column_int64(0);
                const SparseVector vec = decode_sparse_vector(st.column_blob(1));
                double sum = 0.0;
                for (const auto& [term_id, tf_weight] : vec.entries) {
                    const auto it = snap->idf_by_id.find(term_id);
                    if (it == snap->idf_by_id.end())
                        raise(ErrorKind::constraint,
                              "vector references unknown term " + std::to_string(term_id));
                    const double w = tf_weight * it->second;
                    sum += w * w;
                }
                snap->norm_by_segment.emplace(segment_id, std::sqrt(sum));
            }
        }
        {
            auto st = db_.prepare(
                "SELECT segment_id, doc_id, content FROM segments ORDER BY segment_id");
            while (st.step()) {
                snap->folded_segments.push_back(
                    {st.column_int64(0), st.column_int64(1),
                     uni::fold_text(std::string_view(st.column_text(2)))});
            }
        }
        snapshot_ = std::move(snap);
        return snapshot_;
    }

    std::vector<Posting> postings_nolock(int64_t term_id) {
        std::vector<Posting> out;
        auto st = db_.prepare(
            "SELECT segment_id, freq FROM postings WHERE term_id = ? ORDER BY segment_id");
        st.bind(1, term_id);
        while (st.step())
            out.push_back({st.column_int64(0), static_cast<uint32_t>(st.column_int64(1))});
        return out;
    }

    std::optional<SegmentRecord> segment_nolock(int64_t segment_id) {
        auto st = db_.prepare(
            "SELECT segment_id, doc_id, ordinal, content, char_count FROM segments "
            "WHERE segment_id = ?");
        st.bind(1, segment_id);
        if (!st.step()) return std::nullopt;
        return row_to_segment(st);
    }

    std::optional<DocumentRecord> find_document_nolock(std::string_view source_path) {
        auto st = db_.prepare(
            "SELECT doc_id, source_path, signature, ingested_at, size_bytes, modality "
            "FROM documents WHERE source_path = ?");
        st.bind(1, source_path);
        if (!st.step()) return std::nullopt;
        return row_to_document(st);
    }

    std::optional<DocumentRecord> document_by_id_nolock(int64_t doc_id) {
        auto st = db_.prepare(
            "SELECT doc_id, source_path, signature, ingested_at, size_bytes, modality "
            "FROM documents WHERE doc_id = ?");
        st.bind(1, doc_id);
        if (!st.step()) return std::nullopt;
        return row_to_document(st);
    }

    static DocumentRecord row_to_document(sql::Stmt& st) {
        DocumentRecord r;
        r.doc_id = st.column_int64(0);
        r.source_path = st.column_text(1);
        const std::string sig = st.column_blob(2);
        if (sig.size() != r.signature.size())
            raise(ErrorKind::constraint, "stored signature is not 32 bytes");
        std::copy(sig.begin(), sig.end(), r.signature.begin());
        r.ingested_at = st.column_int64(3);
        r.size_bytes = static_cast<uint64_t>(st.column_int64(4));
        r.modality = modality_from_string(st.column_text(5));
        return r;
    }

    static SegmentRecord row_to_segment(sql::Stmt& st) {
        return SegmentRecord{st.column_int64(0), st.column_int64(1), st.column_int64(2),
                             st.column_text(3), st.column_int64(4)};
    }

    int64_t scalar_i64(std::string_view sql) {
        auto st = db_.prepare(sql);
        if (!st.step()) raise(ErrorKind::internal, "scalar query returned no row");
        return st.column_int64(0);
    }

    int64_t meta_i64(std::string_view key) {
        auto st = db_.prepare("SELECT value FROM kf_meta WHERE key = ?");
        st.bind(1, key);
        if (!st.step())
            raise(ErrorKind::not_a_container, "missing container metadata: " + std::string(key));
        return std::stoll(st.column_text(0));
    }

    void set_meta_i64(std::string_view key, int64_t value) {
        auto st = db_.prepare("UPDATE kf_meta SET value = ? WHERE key = ?");
        st.bind(1, std::string_view(std::to_string(value)));
        st.bind(2, key);
        st.exec();
    }

    void bump_generation() {
        db_.exec(
            "UPDATE kf_meta SET value = CAST(CAST(value AS INTEGER) + 1 AS TEXT) "
            "WHERE key = 'kf.generation'");
    }

    std::filesystem::path path_;
    OpenMode mode_;
    int64_t format_version_ = kFormatVersion;
    sql::Db db_;
    std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();

    // Writer-side mirrors of region I bookkeeping, valid for the generation
    // they were loaded at.
    std::unordered_map<std::string, int64_t> vocab_ids_;
    int64_t next_term_id_ = 1;
    int64_t mirror_generation_ = 0;

    std::shared_ptr<const IndexSnapshot> snapshot_;
    std::function<void(int)> fault_hook_;
    uint64_t commit_count_ = 0;
};

} // namespace kfc
