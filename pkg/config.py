import os
from dotenv import load_dotenv


def load_config():
    load_dotenv()
    return {
        "FERMAT_MAX_DEGREE": int(os.getenv("FERMAT_MAX_DEGREE", "40")),
        "FERMAT_MAX_BASIS": int(os.getenv("FERMAT_MAX_BASIS", "2000")),
        "FERMAT_TIME_BUDGET": float(os.getenv("FERMAT_TIME_BUDGET", "600")),
        "FERMAT_FIELD": os.getenv("FERMAT_FIELD", "cyclotomic"),
        "FERMAT_ORDER": os.getenv("FERMAT_ORDER", "grevlex"),
        "FERMAT_LOG_LEVEL": os.getenv("FERMAT_LOG_LEVEL", "INFO").upper(),
    }


# convenience top-level symbols
PORT = int(os.getenv("PORT", os.getenv("FLASK_RUN_PORT", "5000")))
