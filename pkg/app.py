from flask import Flask, request, jsonify
import logging
import os
from config import load_config, PORT
from cli import EXIT_USAGE, RunSpec, run

log = logging.getLogger(__name__)


def create_app():
    app = Flask("FermatContainment")
    app.config.update(load_config())

    @app.route("/health", methods=["GET"])
    def health():
        return jsonify({"status": "ok"})

    @app.route("/api/run", methods=["POST"])
    def api_run():
        data = request.get_json(silent=True)
        if not isinstance(data, dict):
            return jsonify({"error": "JSON object with a command is required"}), 400
        # the HTTP surface never writes files on the server
        data.pop("output", None)
        data.pop("format", None)
        try:
            job = RunSpec.from_dict(data)
        except (TypeError, ValueError) as exc:
            return jsonify({"error": str(exc)}), 400

        try:
            code, report = run(job)
        except Exception:
            log.exception("run failed for %s", job.command)
            return jsonify({"error": "internal error"}), 500
        report["exit_status"] = code
        if code == EXIT_USAGE:
            return jsonify(report), 400
        return jsonify(report)

    # debug: echo the effective configuration when enabled
    if os.getenv("FERMAT_DEBUG") == "1":
        @app.route("/admin/config", methods=["GET"])
        def admin_config():
            return jsonify(load_config())

    return app


if __name__ == "__main__":
    app = create_app()
    app.run(host="0.0.0.0", port=PORT, debug=True)

# Expose the application for WSGI servers (gunicorn expects a module-level `app`)
import sys, traceback
try:
    app = create_app()
except Exception:
    print("[error] create_app() failed during import; printing traceback:", file=sys.stderr)
    traceback.print_exc()
    raise
