#pragma once
// Ingestion: modality detection by magic bytes, per-format text extraction,
// and the SHA-256 incremental directory sync.

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kfc/container.hpp"
#include "kfc/error.hpp"
#include "kfc/glob.hpp"
#include "kfc/normalize.hpp"
#include "kfc/sha256.hpp"
#include "kfc/textindex.hpp"
#include "kfc/types.hpp"
#include "kfc/unicode.hpp"

namespace kfc {

struct ExtractedText {
    std::vector<std::string> segments;   // normalized, each <= max_segment_chars
    std::vector<std::string> warnings;
};

struct IngestConfig;
// Plugin extractors (PDF, DOCX, OCR, ...) register per modality; built-in
// handlers cover plain_text, markdown, json and csv.
using Extractor =
    std::function<ExtractedText(const std::filesystem::path&, const IngestConfig&)>;

struct IngestConfig {
    size_t max_segment_chars = kDefaultMaxSegmentChars;
    std::map<Modality, Extractor> extractors;
};

// ----------------------------------------------------------------------
// Modality detection
// ----------------------------------------------------------------------

// Pure function of the first 512 bytes plus the lowercase extension (no dot)
// as tiebreak. Magic bytes dominate the extension.
inline Modality detect_modality(std::string_view prefix_bytes, std::string_view extension) {
    const auto starts = [&](std::string_view magic) {
        return prefix_bytes.substr(0, magic.size()) == magic;
    };
    if (starts("%PDF")) return Modality::pdf;
    if (starts("PK\x03\x04")) {
        if (extension == "docx") return Modality::docx;
        if (extension == "xlsx") return Modality::tabular_spreadsheet;
        return Modality::unknown;
    }
    if (starts("\x89PNG") || starts("\xFF\xD8\xFF") || starts("GIF8")) return Modality::image;
    if (prefix_bytes.find('\0') == std::string_view::npos &&
        uni::is_valid_utf8(prefix_bytes, /*allow_truncated_tail=*/true)) {
        size_t i = 0;
        while (i < prefix_bytes.size() &&
               std::isspace(static_cast<unsigned char>(prefix_bytes[i])))
            ++i;
        const char first = i < prefix_bytes.size() ? prefix_bytes[i] : '\0';
        if ((first == '{' || first == '[') && extension == "json") return Modality::json;
        if (extension == "csv") return Modality::csv;
        if (extension == "md") return Modality::markdown;
        return Modality::plain_text;
    }
    return Modality::unknown;
}

inline std::string file_extension_lower(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    if (!ext.empty() && ext.front() == '.') ext.erase(0, 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

namespace detail {

inline std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::io, "cannot open file: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) raise(ErrorKind::io, "read error: " + path.string());
    return bytes;
}

inline std::string read_file_prefix(const std::filesystem::path& path, size_t n = 512) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::io, "cannot open file: " + path.string());
    std::string buf(n, '\0');
    in.read(buf.data(), static_cast<std::streamsize>(n));
    buf.resize(static_cast<size_t>(in.gcount()));
    return buf;
}

} // namespace detail

// ----------------------------------------------------------------------
// Tabular serialization and built-in extractors
// ----------------------------------------------------------------------

// "h1: v1; h2: v2; ..." with empty values omitted; rows are padded or
// truncated to the header length.
inline std::string serialize_tabular_row(const std::vector<std::string>& headers,
                                         const std::vector<std::string>& row) {
    if (headers.empty())
        raise(ErrorKind::precondition, "tabular serialization requires headers");
    std::string out;
    for (size_t i = 0; i < headers.size(); ++i) {
        const std::string_view value = i < row.size() ? std::string_view(row[i]) : "";
        if (value.empty()) continue;
        if (!out.empty()) out += "; ";
        out += headers[i];
        out += ": ";
        out += value;
    }
    return out;
}

namespace detail {

// RFC 4180-style CSV: quoted fields, doubled-quote escapes, newlines inside
// quotes. Throws on an unterminated quote or stray quote.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    size_t i = 0;

    const auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    const auto end_record = [&] {
        end_field();
        const bool blank = record.size() == 1 && record[0].empty();
        if (!blank) records.push_back(std::move(record));
        record.clear();
    };

    while (i < text.size()) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
        } else if (c == '"') {
            if (!field.empty() || field_was_quoted)
                raise(ErrorKind::precondition, "malformed CSV: stray quote");
            in_quotes = true;
            field_was_quoted = true;
            ++i;
        } else if (c == ',') {
            end_field();
            ++i;
        } else if (c == '\n' || c == '\r') {
            end_record();
            i += (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ? 2 : 1;
        } else {
            field += c;
            ++i;
        }
    }
    if (in_quotes) raise(ErrorKind::precondition, "malformed CSV: unterminated quote");
    if (!field.empty() || field_was_quoted || !record.empty()) end_record();
    return records;
}

inline ExtractedText extract_plain(const std::filesystem::path& path,
                                   const IngestConfig& cfg) {
    ExtractedText out;
    out.segments = segment_text(normalize_text(read_file_bytes(path)), cfg.max_segment_chars);
    return out;
}

inline void flatten_json(const nlohmann::json& node, const std::string& prefix,
                         std::vector<std::string>& lines) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items())
            flatten_json(value, prefix.empty() ? key : prefix + "." + key, lines);
    } else if (node.is_array()) {
        size_t i = 0;
        for (const auto& value : node)
            flatten_json(value, prefix.empty() ? std::to_string(i) : prefix + "." + std::to_string(i),
                         lines), ++i;
    } else {
        const std::string value = node.is_string() ? node.get<std::string>() : node.dump();
        lines.push_back(prefix.empty() ? value : prefix + ": " + value);
    }
}

// Leaves flattened to "dotted.path: value" lines, one line per leaf.
inline ExtractedText extract_json(const std::filesystem::path& path,
                                  const IngestConfig& cfg) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file_bytes(path));
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::precondition, std::string("malformed JSON: ") + e.what());
    }
    std::vector<std::string> lines;
    flatten_json(doc, "", lines);
    std::vector<std::string> units;
    units.reserve(lines.size());
    for (const auto& line : lines) {
        std::string norm = normalize_text(line);
        if (!norm.empty()) units.push_back(std::move(norm));
    }
    ExtractedText out;
    out.segments = pack_units(units, cfg.max_segment_chars, "\n");
    return out;
}

// One line per data row via serialize_tabular_row; the first record supplies
// the headers (context keys).
inline ExtractedText extract_csv(const std::filesystem::path& path,
                                 const IngestConfig& cfg) {
    const auto records = parse_csv(read_file_bytes(path));
    ExtractedText out;
    if (records.empty()) return out;
    const auto& headers = records.front();
    std::vector<std::string> units;
    for (size_t r = 1; r < records.size(); ++r) {
        std::string line = serialize_tabular_row(headers, records[r]);
        if (line.empty()) continue;  // all-empty row
        std::string norm = normalize_text(line);
        if (!norm.empty()) units.push_back(std::move(norm));
    }
    out.segments = pack_units(units, cfg.max_segment_chars, "\n");
    return out;
}

} // namespace detail

// Dispatches to a registered plugin first, then the built-in handlers.
// Modalities without an extractor (pdf, docx, image, unknown by default)
// fail here and end up in SyncReport.failed.
inline ExtractedText extract_text(const std::filesystem::path& path, Modality modality,
                                  const IngestConfig& cfg) {
    if (const auto it = cfg.extractors.find(modality); it != cfg.extractors.end())
        return it->second(path, cfg);
    switch (modality) {
        case Modality::plain_text:
        case Modality::markdown:
            return detail::extract_plain(path, cfg);
        case Modality::json:
            return detail::extract_json(path, cfg);
        case Modality::csv:
            return detail::extract_csv(path, cfg);
        default:
            raise(ErrorKind::precondition,
                  std::string("no extractor registered for modality '") +
                      to_string(modality) + "'");
    }
}

// ----------------------------------------------------------------------
// Directory sync
// ----------------------------------------------------------------------

struct SyncConfig {
    bool prune = false;                      // delete documents whose files vanished
    std::vector<std::string> include_globs;  // all files when empty
    std::vector<std::string> exclude_globs;
    bool include_hidden = false;
    uint64_t max_file_bytes = 64ull << 20;
    IngestConfig ingest;
};

namespace detail {

inline bool has_hidden_component(const std::filesystem::path& rel) {
    for (const auto& part : rel) {
        const std::string s = part.string();
        if (s.size() > 1 && s.front() == '.') return true;
    }
    return false;
}

inline bool passes_globs(const SyncConfig& cfg, std::string_view rel) {
    if (!cfg.include_globs.empty()) {
        bool any = false;
        for (const auto& g : cfg.include_globs)
            if (glob_match(g, rel)) {
                any = true;
                break;
            }
        if (!any) return false;
    }
    for (const auto& g : cfg.exclude_globs)
        if (glob_match(g, rel)) return false;
    return true;
}

} // namespace detail

// Extraction -> Normalization -> Vectorization -> atomic commit for one file.
inline int64_t ingest_file(Container& container, const std::string& source_path,
                           const std::filesystem::path& file, const Sha256Digest& signature,
                           const IngestConfig& cfg) {
    const Modality modality =
        detect_modality(detail::read_file_prefix(file), file_extension_lower(file));
    ExtractedText extracted = extract_text(file, modality, cfg);

    TermStaging staging = container.begin_staging();
    std::vector<SegmentDraft> drafts;
    std::vector<SparseVector> vectors;
    IndexDelta delta;
    for (auto& content : extracted.segments) {
        const auto tokens = tokenize(content);
        auto counts = count_terms(tokens, staging);
        vectors.push_back(build_document_vector(counts));
        delta.segment_term_counts.push_back(std::move(counts));
        const auto chars = static_cast<int64_t>(uni::codepoint_count(content));
        drafts.push_back({std::move(content), chars});
    }
    delta.new_terms = staging.new_terms();
    delta.next_term_id = staging.next_term_id();
    delta.staged_generation = staging.generation();

    DocumentRecord record;
    record.source_path = source_path;
    record.signature = signature;
    record.ingested_at = now_utc_seconds();
    record.size_bytes = static_cast<uint64_t>(std::filesystem::file_size(file));
    record.modality = modality;
    return container.commit_document(record, drafts, vectors, delta);
}

// Scan, hash, compare; extract and commit only files whose signature is new
// or changed. Unchanged files perform no region writes.
inline SyncReport sync_directory(Container& container, const std::filesystem::path& root,
                                 const SyncConfig& cfg = {}) {
    namespace fs = std::filesystem;
    const auto started = std::chrono::steady_clock::now();
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        raise(ErrorKind::io, "sync root is not a directory: " + root.string());

    std::vector<std::pair<std::string, fs::path>> candidates;
    for (fs::recursive_directory_iterator
             it(root, fs::directory_options::skip_permission_denied, ec), end;
         it != end; it.increment(ec)) {
        if (ec) break;
        const auto& entry = *it;
        if (entry.is_symlink() || !entry.is_regular_file()) continue;
        const fs::path rel = entry.path().lexically_relative(root);
        if (!cfg.include_hidden && detail::has_hidden_component(rel)) continue;
        const std::string rel_str = uni::nfc(rel.generic_string());
        if (!detail::passes_globs(cfg, rel_str)) continue;
        std::error_code sz_ec;
        const auto size = entry.file_size(sz_ec);
        if (sz_ec || size > cfg.max_file_bytes) continue;
        candidates.emplace_back(rel_str, entry.path());
    }
    std::sort(candidates.begin(), candidates.end());

    SyncReport report;
    std::unordered_set<std::string> seen;
    seen.reserve(candidates.size());
    for (const auto& [rel, abs] : candidates) {
        ++report.scanned;
        seen.insert(rel);
        try {
            const Sha256Digest signature = compute_file_signature(abs);
            const auto existing = container.find_document(rel);
            if (existing && existing->signature == signature) {
                ++report.skipped;
                continue;
            }
            ingest_file(container, rel, abs, signature, cfg.ingest);
            existing ? ++report.updated : ++report.added;
        } catch (const std::exception& e) {
            report.failed.push_back({rel, e.what()});
        }
    }

    if (cfg.prune) {
        for (const auto& doc : container.list_documents()) {
            if (seen.contains(doc.source_path)) continue;
            std::error_code exists_ec;
            if (!fs::exists(root / fs::path(doc.source_path), exists_ec))
                if (container.delete_document(doc.source_path)) ++report.removed;
        }
    }

    report.elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

// Polling sync loop; emits one report per pass and stops within one interval
// of the stop predicate turning true.
inline void watch_directory(Container& container, const std::filesystem::path& root,
                            const SyncConfig& cfg, std::chrono::duration<double> interval,
                            const std::function<bool()>& stop_requested,
                            const std::function<void(const SyncReport&)>& on_report) {
    while (!stop_requested()) {
        const auto pass_started = std::chrono::steady_clock::now();
        on_report(sync_directory(container, root, cfg));
        while (!stop_requested() &&
               std::chrono::steady_clock::now() - pass_started <
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(interval))
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
}

inline nlohmann::json sync_report_to_json(const SyncReport& r) {
    nlohmann::json failed = nlohmann::json::array();
    for (const auto& f : r.failed)
        failed.push_back({{"path", f.path}, {"reason", f.reason}});
    return {{"scanned", r.scanned},   {"added", r.added},   {"updated", r.updated},
            {"skipped", r.skipped},   {"removed", r.removed}, {"failed", std::move(failed)},
            {"elapsed", r.elapsed}};
}

} // namespace kfc
