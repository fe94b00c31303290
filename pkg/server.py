"""
Application entry point – FastAPI server.

Serves:
  /api/*   → REST API routes
"""

import argparse
import os

import uvicorn
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from api.routes import router as api_router
from solver.common import load_env_file

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8080

app = FastAPI(
    title="Split Deletion",
    version="1.0.0",
    description="REST API for split-to-block and split-to-threshold vertex deletion",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(api_router)


def main() -> None:
    load_env_file()

    parser = argparse.ArgumentParser(description="Split deletion API server")
    parser.add_argument(
        "--host",
        default=os.environ.get("SPLIT_DELETION_HOST", DEFAULT_HOST),
        help="Bind address. Can also be set via SPLIT_DELETION_HOST environment variable."
    )
    parser.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("SPLIT_DELETION_PORT", DEFAULT_PORT)),
        help="Port. Can also be set via SPLIT_DELETION_PORT environment variable."
    )
    parser.add_argument("--reload", action="store_true", help="Reload on code changes")
    args = parser.parse_args()

    uvicorn.run("server:app", host=args.host, port=args.port, reload=args.reload)


if __name__ == "__main__":
    main()
