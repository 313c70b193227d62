from fastapi import FastAPI
from .config import configure_logging
from .routers import invariants, profiles, scaling, simulations

app = FastAPI(title='KSharpLab')

configure_logging()


@app.get("/healthy")
def health_check():
    return {'status': 'Healthy'}


app.include_router(profiles.router)
app.include_router(scaling.router)
app.include_router(invariants.router)
app.include_router(simulations.router)
