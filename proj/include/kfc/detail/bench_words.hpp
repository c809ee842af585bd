#pragma once
// Fixed word pools for the synthetic corpus generator. The lists are part
// of the artifact: same seed + same pools -> byte-identical corpora.

#include <string_view>

namespace kfc::bench::words {

inline constexpr std::string_view kBusiness[] = {
    "absence", "absences", "account", "accounted", "accounting", "accounts",
    "acquisition", "acquisitions", "addendum", "addendums", "adjournment", "adjournments",
    "agenda", "agendas", "agreement", "agreements", "allocation", "allocations",
    "amendment", "amendments", "amortization", "amortizations", "annuity", "applicant",
    "applicants", "appraisal", "appraisals", "arbitration", "arbitrations", "arrears",
    "asset", "assets", "attendance", "attendances", "audit", "audited",
    "auditing", "audits", "balance", "balanced", "balances", "balancing",
    "ballot", "ballots", "bank", "banked", "banking", "banks",
    "benefit", "benefits", "bid", "bidding", "bids", "bill",
    "billed", "billing", "billings", "bond", "bonds", "bonus",
    "branch", "branches", "brand", "branded", "branding", "brands",
    "broker", "brokered", "brokering", "brokers", "budget", "budgeted",
    "budgeting", "budgets", "bulletin", "bulletins", "business", "buyer",
    "buyers", "bylaw", "bylaws", "campaign", "campaigns", "candidate",
    "candidates", "capital", "capitals", "cash", "cashes", "charge",
    "charged", "charges", "charging", "charter", "charters", "circular",
    "circulars", "claim", "claimed", "claiming", "claims", "clause",
    "clauses", "client", "clients", "collateral", "collaterals", "commerce",
    "commerces", "commission", "commissions", "commodity", "compensation", "compensations",
    "compliance", "compliances", "consult", "consultant", "consultants", "consulted",
    "consulting", "contract", "contracted", "contracting", "contractor", "contractors",
    "contracts", "corporation", "corporations", "cost", "costed", "costing",
    "costs", "covenant", "covenants", "credit", "credited", "crediting",
    "creditor", "creditors", "credits", "currency", "customer", "customers",
    "deadline", "deadlines", "deal", "dealed", "dealer", "dealers",
    "dealing", "debit", "debits", "debt", "debts", "deduct",
    "deducted", "deducting", "deduction", "deductions", "deed", "deeds",
    "default", "defaults", "deliver", "delivered", "delivering", "delivery",
    "demand", "demands", "demotion", "demotions", "deposit", "deposited",
    "depositing", "deposits", "depreciation", "depreciations", "directive", "directives",
    "director", "directors", "disbursement", "disbursements", "discount", "discounted",
    "discounting", "discounts", "distribute", "distributed", "distributing", "distribution",
    "distributions", "dividend", "dividends", "duty", "earn", "earned",
    "earning", "earnings", "economy", "employee", "employees", "employer",
    "employers", "endorsement", "endorsements", "enterprise", "enterprises", "equity",
    "escrow", "escrows", "estimate", "estimated", "estimates", "estimating",
    "exchange", "exchanged", "exchanges", "exchanging", "executive", "executives",
    "expense", "expensed", "expenses", "expensing", "export", "exported",
    "exporting", "exports", "fee", "fees", "finance", "financed",
    "finances", "financing", "firm", "firms", "forecast", "forecasted",
    "forecasting", "forecasts", "foreclosure", "foreclosures", "franchise", "franchises",
    "fund", "funded", "funding", "fundings", "funds", "goods",
    "gratuity", "growth", "growths", "guarantee", "guaranteed", "guarantees",
    "guaranteing", "headcount", "headcounts", "holding", "holdings", "honorarium",
    "honorariums", "import", "imported", "importing", "imports", "incentive",
    "incentives", "incentivize", "incentivized", "incentivizing", "income", "incomes",
    "inflation", "inflations", "innovation", "innovations", "installment", "installments",
    "insurance", "insurances", "insure", "insured", "insuring", "interest",
    "interests", "interview", "interviews", "inventory", "invest", "invested",
    "investing", "investment", "investments", "investor", "investors", "invoice",
    "invoiced", "invoices", "invoicing", "itinerary", "leadership", "leaderships",
    "lease", "leased", "leases", "leasing", "leave", "leaves",
    "ledger", "ledgers", "lend", "lended", "lender", "lenders",
    "lending", "levy", "liability", "license", "licensed", "licenses",
    "licensing", "lien", "liens", "liquidity", "loan", "loaned",
    "loaning", "loans", "logistics", "manage", "managed", "management",
    "managements", "manager", "managers", "managing", "mandate", "mandates",
    "margin", "margins", "market", "marketed", "marketing", "marketings",
    "markets", "memo", "memorandum", "memorandums", "memos", "merchandise",
    "merchandises", "merge", "merged", "merger", "mergers", "merging",
    "minutes", "mortgage", "mortgages", "motion", "motions", "negotiate",
    "negotiated", "negotiating", "negotiation", "negotiations", "notice", "notices",
    "offer", "offered", "offering", "offers", "office", "offices",
    "onboarding", "onboardings", "operation", "operations", "order", "ordered",
    "ordering", "orders", "outsource", "outsourced", "outsourcing", "outsourcings",
    "overhead", "overheads", "overtime", "overtimes", "own", "owned",
    "ownership", "ownerships", "owning", "partner", "partnered", "partnering",
    "partners", "partnership", "partnerships", "pay", "paying", "payment",
    "payments", "payroll", "payrolls", "pension", "pensions", "plan",
    "planned", "planning", "plans", "policy", "portfolio", "portfolios",
    "premium", "premiums", "price", "priced", "prices", "pricing",
    "pricings", "probation", "probations", "procure", "procured", "procurement",
    "procurements", "procuring", "produce", "produced", "producing", "product",
    "products", "profit", "profited", "profiting", "profits", "project",
    "projects", "promote", "promoted", "promoting", "promotion", "promotions",
    "proposal", "proposals", "propose", "proposed", "proposing", "prospect",
    "prospects", "proxy", "purchase", "purchased", "purchases", "purchasing",
    "quarter", "quarters", "quorum", "quorums", "quota", "quotas",
    "quotation", "quotations", "quote", "quoted", "quoting", "rate",
    "rates", "rebate", "rebated", "rebates", "rebating", "receipt",
    "receipts", "receivable", "receivables", "recruit", "recruited", "recruiting",
    "recruitment", "recruitments", "refund", "refunded", "refunding", "refunds",
    "region", "regions", "remittance", "remittances", "report", "reported",
    "reporting", "reports",
};

inline constexpr std::string_view kTechnical[] = {
    "adapter", "adapters", "algorithm", "algorithms", "allocate", "allocated",
    "allocating", "allocator", "allocators", "analytics", "api", "apis",
    "architecture", "architectures", "array", "artifact", "artifacts", "assembly",
    "attribute", "attributes", "authenticate", "authenticated", "authenticating", "authentication",
    "authentications", "automate", "automated", "automating", "automation", "automations",
    "automaton", "automatons", "backend", "backends", "backoff", "backoffs",
    "backup", "backups", "bandwidth", "bandwidths", "benchmark", "benchmarked",
    "benchmarking", "benchmarks", "binary", "bitrate", "bitrates", "boolean",
    "booleans", "boot", "booted", "booting", "bootstrap", "bootstraps",
    "buffer", "buffered", "buffering", "buffers", "bug", "bugs",
    "build", "builded", "building", "builds", "bytecode", "bytecodes",
    "cache", "cached", "caches", "caching", "callback", "callbacks",
    "certificate", "certificates", "changelog", "changelogs", "channel", "channels",
    "checkpoint", "checkpoints", "checksum", "checksums", "cipher", "ciphers",
    "circuit", "circuits", "closure", "closures", "cluster", "clusters",
    "codec", "codecs", "command", "commands", "commit", "commits",
    "compile", "compiled", "compiler", "compilers", "compiling", "component",
    "components", "compress", "compressed", "compressing", "compression", "compressions",
    "computation", "computations", "compute", "computed", "computing", "concurrency",
    "configuration", "configurations", "configure", "configured", "configuring", "connect",
    "connected", "connecting", "connection", "connections", "consensus", "console",
    "consoles", "container", "containers", "controller", "controllers", "core",
    "cores", "coroutine", "coroutines", "cpu", "cpus", "crash",
    "crashed", "crashes", "crashing", "cryptography", "daemon", "daemons",
    "dashboard", "dashboards", "database", "databases", "datagram", "datagrams",
    "dataset", "datasets", "debug", "debuged", "debugger", "debuggers",
    "debuging", "decode", "decoded", "decoder", "decoders", "decoding",
    "dependency", "deploy", "deploying", "deployment", "deployments", "deserializer",
    "deserializers", "design", "designs", "developer", "developers", "device",
    "devices", "diagnostics", "digest", "digests", "directory", "disk",
    "disks", "dispatch", "dispatched", "dispatcher", "dispatchers", "dispatching",
    "docker", "dockers", "domain", "domains", "driver", "drivers",
    "encode", "encoded", "encoding", "encodings", "encrypt", "encrypted",
    "encrypting", "encryption", "encryptions", "endpoint", "endpoints", "engine",
    "engines", "entropy", "enum", "enums", "environment", "environments",
    "exception", "exceptions", "execute", "executed", "executing", "execution",
    "executions", "fail", "failed", "failing", "fetch", "fetched",
    "fetching", "filesystem", "filesystems", "filter", "filtered", "filtering",
    "firewall", "firewalls", "firmware", "firmwares", "flush", "flushed",
    "flushing", "follower", "followers", "frame", "frames", "framework",
    "frameworks", "frontend", "frontends", "function", "functions", "gateway",
    "generator", "generators", "gigabyte", "gigabytes", "grammar", "grammars",
    "graph", "graphs", "hardware", "hardwares", "hash", "hashed",
    "hashes", "hashing", "header", "headers", "heap", "heaps",
    "heartbeat", "heartbeats", "hostname", "hostnames", "identifier", "identifiers",
    "index", "indexed", "indexes", "indexing", "inline", "inlines",
    "install", "installed", "installing", "instance", "instances", "integer",
    "integers", "integrate", "integrated", "integrating", "interface", "interfaces",
    "internet", "internets", "interrupt", "interrupts", "iterate", "iterated",
    "iterating", "iteration", "iterations", "jitter", "jitters", "kernel",
    "kernels", "keyboard", "keyboards", "keystore", "keystores", "lambda",
    "lambdas", "latency", "leader", "leaders", "lexer", "lexers",
    "library", "link", "linked", "linker", "linkers", "linking",
    "load", "loaded", "loading", "loads", "log", "logfile",
    "logfiles", "logged", "logging", "loop", "looped", "looping",
    "loops", "machine", "machines", "macro", "macros", "map",
    "mapped", "mapping", "marshaller", "marshallers", "matrix", "matrixes",
    "memory", "metadata", "metadatas", "method", "methods", "metric",
    "metrics", "microservice", "microservices", "migrate", "migrated", "migrating",
    "migration", "migrations", "module", "modules", "monitor", "monitored",
    "monitoring", "monitors", "mount", "mounted", "mounting", "mutex",
    "mutexes", "namespace", "namespaces", "netmask", "netmasks", "network",
    "networks", "node", "nodes", "nonce", "nonces", "object",
    "objects", "opcode", "opcodes", "optimization", "optimizations", "packet",
    "packets", "parameter", "parameters", "parse", "parsed", "parser",
    "parsers", "parsing", "partition", "partitioned", "partitioning", "partitions",
    "patch", "patched", "patches", "patching", "payload", "payloads",
    "performance", "performances", "ping", "pipe", "piped", "pipeline",
    "pipelines", "piping", "pixel", "pixels", "platform", "platforms",
    "plugin", "plugins", "pointer", "pointers", "poll", "polled",
    "polling", "port", "ports", "procedure", "procedures", "process",
    "processor", "processors", "profile", "profiled", "profiling", "protocol",
    "protocols", "prototype", "prototypes", "provision", "provisioned", "provisioning",
    "provisionings", "proxying", "push", "pushed", "pushing", "query",
    "queue", "queued", "queues", "queuing", "ratelimit", "ratelimits",
    "reboot", "rebooted", "rebooting", "recurse", "recursed", "recursing",
    "recursion", "recursions", "refactor", "refactored", "refactoring", "refactorings",
    "register", "registered", "registering", "registry", "release", "released",
    "releases", "releasing", "render", "rendered", "renderer", "renderers",
    "rendering", "replica", "replicas", "repository", "request", "requested",
    "requesting", "requests", "resolve", "resolved", "resolving", "resource",
    "resources", "respond", "responded", "responding", "response", "responses",
    "restart", "restarted", "restarting", "retry", "rollback", "rollbacked",
    "rollbacking", "rollbacks",
};

} // namespace kfc::bench::words
