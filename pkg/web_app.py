"""
SKEWAID - Web Application
================================
Run with: python web_app.py
Then POST JSON to: http://localhost:8000/api/...
"""

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from config import HOST, OUTPUT_DIR, PORT
from diagnostics import log
from routes.pencils import router as pencils_router

# ===========================================
# Initialize
# ===========================================
app = FastAPI(title="SKEWAID", version="1.0.0")

# Mount route modules
app.include_router(pencils_router)


@app.on_event("startup")
async def startup():
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    log(f"Web interface ready on port {PORT}", "WEB")


@app.get("/")
async def index():
    return JSONResponse({
        "name": "SKEWAID",
        "endpoints": [
            "/api/status",
            "/api/invariants",
            "/api/aid",
            "/api/formula",
            "/api/canonical",
            "/api/congruent",
            "/api/randomize",
            "/api/check",
        ],
    })


# ===========================================
# Run Server
# ===========================================

if __name__ == "__main__":
    import uvicorn

    print("=" * 60)
    print("  SKEWAID - Web Interface")
    print(f"  API root: http://localhost:{PORT}")
    print("=" * 60)

    uvicorn.run(
        "web_app:app",
        host=HOST,
        port=PORT,
        reload=True
    )
