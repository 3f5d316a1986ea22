import os

# ===== Config =====
# Every setting can be overridden from the environment; defaults suit local runs.

LOG_LEVEL = os.environ.get("SCCHECK_LOG_LEVEL", "INFO").upper()

# Deep functional runs recurse once per dfs/dfs1 frame, so the limit must
# cover |V| + |E| frames plus checker overhead.
RECURSION_LIMIT = int(os.environ.get("SCCHECK_RECURSION_LIMIT", "1000000"))
STACK_MB = int(os.environ.get("SCCHECK_STACK_MB", "512"))

# HTTP service caps
MAX_API_VERTICES = int(os.environ.get("SCCHECK_MAX_API_VERTICES", "5000"))
MAX_CHECKED_VERTICES = int(os.environ.get("SCCHECK_MAX_CHECKED_VERTICES", "200"))

# CORS Configuration
allowed_origins_env = os.environ.get("ALLOWED_ORIGINS", "")
if allowed_origins_env:
    ALLOWED_ORIGINS = [origin.strip() for origin in allowed_origins_env.split(",")]
else:
    ALLOWED_ORIGINS = [
        "http://localhost:3000",
        "http://localhost:8000",
    ]

DEFAULT_BENCH_SIZES = (2**14, 2**15, 2**16, 2**17)
