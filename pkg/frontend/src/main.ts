import { App } from "./app.js";
import { SessionApi } from "./api.js";
import { sessionIdFromLocation } from "./state.js";

const root = document.getElementById("app")!;
const app = new App({
  root,
  api: new SessionApi(""),
  navigate: (path) => history.pushState({}, "", path),
  keyboardTarget: window,
});

void app.start(sessionIdFromLocation(location.pathname, location.hash));
